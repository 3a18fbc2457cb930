#include "kmaj/io.hpp"

#include <fstream>

namespace kmaj {

Seq seq_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("mode") || !j.contains("values"))
        throw Error("sequence json needs {mode, values}");
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "rational" && mode != "float")
        throw Error("sequence mode must be 'rational' or 'float'");
    std::vector<Scalar> v;
    for (const Json& item : j.at("values")) {
        if (mode == "rational") {
            if (item.is_number_integer())
                v.push_back(Scalar(item.get<long long>()));
            else
                v.push_back(parse_rational(item.get<std::string>()));
        } else {
            v.push_back(Scalar::real(item.get<double>()));
        }
    }
    return Seq(std::move(v));
}

Json seq_to_json(const Seq& x) {
    Json values = Json::array();
    bool exact = x.all_exact();
    for (const Scalar& s : x)
        if (exact)
            values.push_back(s.str());
        else
            values.push_back(s.to_double());
    return Json{{"mode", exact ? "rational" : "float"}, {"values", values}};
}

Seq read_seq_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open sequence file " + path);
    Json j;
    in >> j;
    return seq_from_json(j);
}

void write_seq_file(const std::string& path, const Seq& x) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write sequence file " + path);
    out << seq_to_json(x).dump(2) << '\n';
}

Json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return s.str();
    return s.to_double();
}

Json interval_to_json(const Interval& p) {
    Json j{{"lo", scalar_to_json(p.lo)}, {"lo_open", p.lo_open}};
    if (p.hi) {
        j["hi"] = scalar_to_json(*p.hi);
        j["hi_open"] = p.hi_open;
    } else {
        j["hi"] = "inf";
    }
    return j;
}

Json interval_set_to_json(const IntervalSet& s) {
    Json arr = Json::array();
    for (const Interval& p : s) arr.push_back(interval_to_json(p));
    return arr;
}

Json combo_to_json(const ConvexCombo& combo) {
    Json weights = Json::array(), perms = Json::array();
    bool exact = true;
    for (const auto& [w, m] : combo.terms) {
        weights.push_back(scalar_to_json(w));
        exact = exact && w.is_exact();
        Json entries = Json::array();
        for (std::size_t t = 0; t < m.targets.size(); ++t) {
            if (!m.targets[t]) continue;
            entries.push_back(Json{{"target", t},
                                   {"source", m.targets[t]->source},
                                   {"sign", m.targets[t]->sign}});
        }
        perms.push_back(entries);
    }
    return Json{{"weights", weights},
                {"permutations", perms},
                {"check", exact ? "exact" : "float"}};
}

Json step_to_json(const PStep& st) {
    Json j{{"n", st.n}, {"outcome", outcome_name(st.outcome)}, {"b_club", st.b_club}};
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = scalar_to_json(Scalar(*opt));
    };
    if (st.b_point) j["b"] = scalar_to_json(*st.b_point);
    put("b_diamond", st.b_diamond);
    if (st.a_point) j["a"] = scalar_to_json(*st.a_point);
    if (st.a_tilde) j["a_tilde"] = scalar_to_json(*st.a_tilde);
    put("a_club", st.a_club);
    put("a_diamond", st.a_diamond);
    put("next_b_club", st.b_club_next);
    auto put_set = [&](const char* key, const std::optional<Interval>& s) {
        j[key] = s ? interval_to_json(*s) : Json(nullptr);
    };
    put_set("B_n", st.set_B);
    put_set("A_n", st.set_A);
    put_set("Omega_n", st.set_Omega);
    put_set("Gamma_n", st.set_Gamma);
    return j;
}

Json decomposition_to_json(const PDecomposition& d) {
    Json steps = Json::array();
    for (const PStep& st : d.steps) steps.push_back(step_to_json(st));
    return Json{{"A", interval_set_to_json(d.regions.A)},
                {"B", interval_set_to_json(d.regions.B)},
                {"steps", steps},
                {"union_A", interval_set_to_json(d.union_A)},
                {"union_B", interval_set_to_json(d.union_B)},
                {"union_Omega", interval_set_to_json(d.union_Omega)},
                {"union_Gamma", interval_set_to_json(d.union_Gamma)}};
}

Json pipeline_to_json(const PipelineResult& r) {
    Json spaces = Json::array();
    for (const SpaceCheck& c : r.space_checks)
        spaces.push_back(Json{{"space", c.space.name()},
                              {"norm_x", c.norm_x},
                              {"norm_y", c.norm_y},
                              {"ok", c.ok}});
    Json j{{"bound_holds", r.bound_holds},
           {"c3", scalar_to_json(r.c3)},
           {"trivial", r.trivial},
           {"space_checks", spaces}};
    if (r.decomposition) j["decomposition"] = decomposition_to_json(*r.decomposition);
    return j;
}

} // namespace kmaj
