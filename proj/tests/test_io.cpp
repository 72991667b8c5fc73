#include <doctest.h>

#include <sstream>

#include "hshift/io.hpp"

using namespace hs;

TEST_SUITE("io") {

TEST_CASE("rounding to 12 significant digits") {
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
    CHECK(round12(0.0) == 0.0);
}

TEST_CASE("operator json is dense and lane-major") {
    auto t = make_B(symmetric_window(2));
    auto j = to_json(t);
    CHECK(j["window"]["lo"] == -2);
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][1][0][0] == 1.0);
    CHECK(j["rows"][0][0][0] == 0.0);
}

TEST_CASE("envelope carries the schema and config") {
    auto e = envelope("classify", {{"window", 60}}, {{"verdict", "equivalent"}});
    CHECK(e["schema"] == 1);
    CHECK(e["config"]["window"] == 60);
    CHECK(e.dump().find("\"schema\":1") == 1);
}

TEST_CASE("reports serialize deterministically") {
    auto t = make_B(symmetric_window(20));
    auto a = to_json(verify_homogeneous(t, principal(0.0, {0, 1}), 6, 7, 1e-6, 5)).dump();
    auto b = to_json(verify_homogeneous(t, principal(0.0, {0, 1}), 6, 7, 1e-6, 5)).dump();
    CHECK(a == b);
}

TEST_CASE("csv writers") {
    std::ostringstream f;
    write_fingerprint_csv(f, fingerprint(CParams{0.25, 0.75, 2}, symmetric_window(20), 5));
    CHECK(f.str().rfind("rank,n,gamma\n1,", 0) == 0);
    std::ostringstream b;
    write_band_csv(b, make_Slambda(0.5, symmetric_window(1)));
    CHECK(b.str() == "n,lane_row,lane_col,re,im\n-1,0,0,-2,0\n0,0,0,0.666666666667,0\n");
}

}
