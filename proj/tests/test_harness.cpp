#include <doctest.h>

#include "kmaj/harness.hpp"

using namespace kmaj;

TEST_CASE("transfer-property suite passes on l1 and on lq itself") {
    Report r1 = verify_thm_easy(SpaceSpec::lp(1.0), 1.0, 2.0, 1.0, 2000, 7);
    CHECK(r1.pass);
    CHECK(r1.violations.empty());

    Report rq = verify_thm_easy(SpaceSpec::lp(2.0), 2.0, 2.0, 1.0, 2000, 7);
    CHECK(rq.pass);
    CHECK(rq.params["note"] == "checked at p = 1, the weakest endpoint choice");
}

TEST_CASE("end-to-end pipeline suite on l1") {
    Report r = verify_thm_main(SpaceSpec::lp(1.0), Scalar(2), Scalar(1), Scalar(1), 60, 7);
    CHECK(r.pass);
    CHECK(r.violations.empty());
}

TEST_CASE("weak-Fatou transfer suite on l(3/2)") {
    Report r = verify_thm_enough(SpaceSpec::lp(1.5), 1.0, 1.0, 60, 7);
    CHECK(r.pass);
}

TEST_CASE("reports are deterministic given seed and trials") {
    Report a = verify_thm_main(SpaceSpec::lp(1.0), Scalar(2), Scalar(1), Scalar(1), 20, 13);
    Report b = verify_thm_main(SpaceSpec::lp(1.0), Scalar(2), Scalar(1), Scalar(1), 20, 13);
    Json ja = a.to_json(), jb = b.to_json();
    ja.erase("timing_ms");
    jb.erase("timing_ms");
    CHECK(ja == jb);
}

TEST_CASE("report json carries the contract fields") {
    Report r = verify_thm_easy(SpaceSpec::lp(1.0), 1.0, 2.0, 1.0, 10, 3);
    Json j = r.to_json();
    for (const char* key : {"theorem", "params", "trials", "seed", "pass", "violations",
                            "timing_ms"})
        CHECK(j.contains(key));
}
