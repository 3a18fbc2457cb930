#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "kmaj/harness.hpp"
#include "kmaj/kfunc.hpp"
#include "kmaj/majorization.hpp"

namespace {

using namespace kmaj;

SpaceSpec parse_space(const std::string& text) {
    if (text == "l1") return SpaceSpec::lp(1.0);
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("space must be l1, lp:<p>, weak-lp:<p>");
    std::string kind = text.substr(0, colon);
    double p = std::stod(text.substr(colon + 1));
    if (kind == "lp") return SpaceSpec::lp(p);
    if (kind == "weak-lp") return SpaceSpec::weak_lp(p);
    if (kind == "weak-lp-sep") return SpaceSpec::weak_lp_separable(p);
    throw Error("unknown space kind '" + kind + "'");
}

Seq load_seq(const std::string& path, const std::string& mode) {
    Seq x = read_seq_file(path);
    if (mode == "float" && x.all_exact()) {
        std::vector<Scalar> v;
        for (const Scalar& s : x) v.push_back(Scalar::real(s.to_double()));
        return Seq(std::move(v));
    }
    if (mode == "exact" && !x.all_exact())
        throw Error("--mode exact requires rational input files");
    return x;
}

void emit(const Json& j, const std::string& json_path) {
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw Error("cannot write " + json_path);
        out << j.dump(2) << '\n';
    }
    std::cout << j.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequence majorization and K-functional toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string mode = "keep", json_path;
    double tol = comparison_tolerance();
    std::uint64_t seed = 7;
    app.add_option("--mode", mode, "exact|float|keep (input coercion)");
    app.add_option("--tol", tol, "float comparison tolerance");
    app.add_option("--seed", seed, "randomized-suite seed");
    app.add_option("--json", json_path, "also write the result to this path");
    // Subcommand callbacks run once the whole line is parsed; each one
    // applies the global tolerance first.
    auto sync = [&] { set_comparison_tolerance(tol); };

    int exit_code = 0;

    // rearrange
    auto* cmd_re = app.add_subcommand("rearrange", "nonincreasing rearrangement");
    std::string re_x;
    cmd_re->add_option("--x", re_x)->required();
    cmd_re->callback([&] { sync(); emit(seq_to_json(rearrange(load_seq(re_x, mode))), json_path); });

    // kfunc
    auto* cmd_kf = app.add_subcommand("kfunc", "K-functional evaluation");
    std::string kf_couple = "1,inf", kf_x;
    double kf_q = 2.0, kf_t = 1.0;
    cmd_kf->add_option("--couple", kf_couple, "1,inf | 1,q");
    cmd_kf->add_option("--q", kf_q);
    cmd_kf->add_option("--t", kf_t)->required();
    cmd_kf->add_option("--x", kf_x)->required();
    cmd_kf->callback([&] {
        sync();
        Seq x = load_seq(kf_x, mode);
        if (kf_couple == "1,inf") {
            Scalar v = k_l1_linf(Scalar::real(kf_t), x);
            emit(Json{{"value", v.to_double()},
                      {"lower", v.to_double()},
                      {"upper", v.to_double()}},
                 json_path);
        } else if (kf_couple == "1,q") {
            KBracket b = k_l1_lq(kf_t, x, kf_q, tol);
            emit(Json{{"value", b.value}, {"lower", b.lower}, {"upper", b.upper}}, json_path);
        } else {
            throw Error("--couple must be 1,inf or 1,q");
        }
    });

    // majorize check
    auto* cmd_ma = app.add_subcommand("majorize", "partial-sum domination checks");
    auto* cmd_ma_check = cmd_ma->add_subcommand("check");
    std::string ma_kind = "sq", ma_u, ma_v;
    double ma_q = 2.0;
    cmd_ma_check->add_option("--kind", ma_kind, "sq|hlp|tail");
    cmd_ma_check->add_option("--q", ma_q);
    cmd_ma_check->add_option("--u", ma_u)->required();
    cmd_ma_check->add_option("--v", ma_v)->required();
    cmd_ma_check->callback([&] {
        sync();
        Seq u = load_seq(ma_u, mode), v = load_seq(ma_v, mode);
        Scalar q = Scalar::real(ma_q);
        if (ma_q == static_cast<long long>(ma_q)) q = Scalar(static_cast<long long>(ma_q));
        Json j;
        if (ma_kind == "sq") {
            PremiseCheck c = check_sq_premise(u, v, q);
            j = Json{{"holds", c.holds}};
            j["first_violation"] =
                c.first_violation ? Json(*c.first_violation) : Json(nullptr);
            if (!c.detail.empty()) j["detail"] = c.detail;
            exit_code = c.holds ? 0 : 1;
        } else if (ma_kind == "hlp") {
            bool h = check_hlp(u, v);
            j = Json{{"holds", h}, {"first_violation", nullptr}};
            exit_code = h ? 0 : 1;
        } else if (ma_kind == "tail") {
            bool h = check_tail_dom(u, v, q);
            j = Json{{"holds", h}, {"first_violation", nullptr}};
            exit_code = h ? 0 : 1;
        } else {
            throw Error("--kind must be sq, hlp or tail");
        }
        emit(j, json_path);
    });

    // transfer
    auto* cmd_tr = app.add_subcommand("transfer", "convex-combination transfer T x = y");
    std::string tr_x, tr_y;
    cmd_tr->add_option("--x", tr_x)->required();
    cmd_tr->add_option("--y", tr_y)->required();
    cmd_tr->callback([&] {
        sync();
        ConvexCombo combo = hlp_transfer(load_seq(tr_x, mode), load_seq(tr_y, mode));
        emit(combo_to_json(combo), json_path);
    });

    // procp run
    auto* cmd_pp = app.add_subcommand("procp", "interval decomposition engine");
    auto* cmd_pp_run = cmd_pp->add_subcommand("run");
    std::string pp_x, pp_y;
    double pp_q = 2.0, pp_eps = 1.0 / 1024.0;
    cmd_pp_run->add_option("--x", pp_x)->required();
    cmd_pp_run->add_option("--y", pp_y)->required();
    cmd_pp_run->add_option("--q", pp_q);
    cmd_pp_run->add_option("--eps", pp_eps);
    cmd_pp_run->callback([&] {
        sync();
        Seq x = load_seq(pp_x, mode), y = load_seq(pp_y, mode);
        Scalar q = (pp_q == static_cast<long long>(pp_q))
                       ? Scalar(static_cast<long long>(pp_q))
                       : Scalar::real(pp_q);
        Scalar eps = Scalar::real(pp_eps);
        if (pp_eps == 1.0 / 1024.0) eps = Scalar::ratio(1, 1024);
        PipelineResult res =
            theorem_main_pipeline(x, y, q, Scalar(1), Scalar(1), eps, {});
        emit(pipeline_to_json(res), json_path);
    });

    // space
    auto* cmd_sp = app.add_subcommand("space", "sequence-space norms and probes");
    auto* cmd_sp_norm = cmd_sp->add_subcommand("norm");
    std::string sp_space = "l1", sp_x;
    cmd_sp_norm->add_option("--space", sp_space)->required();
    cmd_sp_norm->add_option("--x", sp_x)->required();
    cmd_sp_norm->callback([&] {
        sync();
        double n = space_norm(parse_space(sp_space), load_seq(sp_x, mode));
        emit(Json{{"space", sp_space}, {"norm", n}}, json_path);
    });
    auto* cmd_sp_probe = cmd_sp->add_subcommand("sq-probe");
    std::string spp_space = "lp:1";
    double spp_q = 2.0, spp_c = 1.0;
    std::uint64_t spp_trials = 10000;
    cmd_sp_probe->add_option("--space", spp_space)->required();
    cmd_sp_probe->add_option("--q", spp_q);
    cmd_sp_probe->add_option("--C", spp_c);
    cmd_sp_probe->add_option("--trials", spp_trials);
    cmd_sp_probe->callback([&] {
        sync();
        Report r = verify_thm_easy(parse_space(spp_space), 1.0, spp_q, spp_c, spp_trials,
                                   seed);
        emit(r.to_json(), json_path);
        exit_code = r.pass ? 0 : 1;
    });

    // verify
    auto* cmd_vf = app.add_subcommand("verify", "randomized theorem suites");
    std::string vf_which, vf_space = "l1";
    double vf_q = 2.0, vf_c = 1.0, vf_c1 = 1.0, vf_c2 = 1.0, vf_r = 1.0, vf_eps = 1.0 / 1024.0;
    std::uint64_t vf_trials = 200;
    cmd_vf->add_option("which", vf_which, "thm-easy|thm-main|thm-enough")->required();
    cmd_vf->add_option("--space", vf_space);
    cmd_vf->add_option("--q", vf_q);
    cmd_vf->add_option("--C", vf_c);
    cmd_vf->add_option("--C1", vf_c1);
    cmd_vf->add_option("--C2", vf_c2);
    cmd_vf->add_option("--R", vf_r);
    cmd_vf->add_option("--eps", vf_eps);
    cmd_vf->add_option("--trials", vf_trials);
    cmd_vf->callback([&] {
        sync();
        SpaceSpec e = parse_space(vf_space);
        Report r;
        if (vf_which == "thm-easy") {
            r = verify_thm_easy(e, 1.0, vf_q, vf_c, vf_trials, seed);
        } else if (vf_which == "thm-main") {
            Scalar q = (vf_q == static_cast<long long>(vf_q))
                           ? Scalar(static_cast<long long>(vf_q))
                           : Scalar::real(vf_q);
            Scalar eps = vf_eps == 1.0 / 1024.0 ? Scalar::ratio(1, 1024)
                                                : Scalar::real(vf_eps);
            r = verify_thm_main(e, q, Scalar::real(vf_c1), Scalar::real(vf_c2), vf_trials,
                                seed, eps);
        } else if (vf_which == "thm-enough") {
            r = verify_thm_enough(e, vf_c, vf_r, vf_trials, seed);
        } else {
            throw Error("verify needs thm-easy, thm-main or thm-enough");
        }
        emit(r.to_json(), json_path);
        exit_code = r.pass ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
