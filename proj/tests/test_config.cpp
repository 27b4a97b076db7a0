#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floquet/config.hpp"
#include "floquet/output.hpp"
#include "floquet/pipeline.hpp"

using namespace floquet;

namespace {
const char* kDesk1 = R"({
  "geometry": {"L": "pi", "boundary": "dirichlet"},
  "physics": {"omega2": 2.0, "permittivity": {"type": "constant", "value": 1.0}},
  "numerics": {"M1": 3, "M2": 6, "im_max": 7.0},
  "outputs": {"format": "csv"}
})";
}

TEST_CASE("a complete config parses with defaults applied") {
    auto cfg = load_config(kDesk1);
    CHECK(cfg.L == doctest::Approx(kPi));
    CHECK(cfg.bc.kind == BoundaryKind::Dirichlet);
    CHECK(cfg.omega2 == 2.0);
    CHECK(cfg.M1 == 3);
    CHECK(cfg.M2 == 6);
    CHECK(cfg.n_tr() == 6);
    CHECK(cfg.tol.cluster == 1e-6);
    CHECK(cfg.outputs.format == "csv");
}

TEST_CASE("length expressions") {
    auto parse_L = [](const std::string& expr) {
        const std::string text = R"({"geometry": {"L": )" + expr +
                                 R"(, "boundary": "dirichlet"},
             "physics": {"omega2": 1.0, "permittivity": {"type": "constant", "value": 1.0}},
             "numerics": {}})";
        return load_config(text).L;
    };
    CHECK(parse_L("\"pi\"") == doctest::Approx(kPi));
    CHECK(parse_L("\"2*pi\"") == doctest::Approx(2 * kPi));
    CHECK(parse_L("\"pi/2\"") == doctest::Approx(kPi / 2));
    CHECK(parse_L("\"0.5*pi\"") == doctest::Approx(kPi / 2));
    CHECK(parse_L("1.25") == doctest::Approx(1.25));
}

TEST_CASE("schema violations carry the offending path") {
    auto expect_fail = [](const std::string& text, const std::string& needle) {
        try {
            load_config(text);
            FAIL_CHECK("expected a config error mentioning " << needle);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_fail(R"({"physics": {}, "numerics": {}})", "/geometry");
    expect_fail(R"({"geometry": {"L": 1, "boundary": "dirichlet"},
                    "physics": {"permittivity": {"type": "constant", "value": 1}},
                    "numerics": {}})",
                "/physics/omega2");
    expect_fail(R"({"geometry": {"L": 1, "boundary": "nonsense"},
                    "physics": {"omega2": 1, "permittivity": {"type": "constant", "value": 1}},
                    "numerics": {}})",
                "/geometry/boundary");
    expect_fail(R"({"geometry": {"L": 1, "boundary": "quasiperiodic", "beta": 7.0},
                    "physics": {"omega2": 1, "permittivity": {"type": "constant", "value": 1}},
                    "numerics": {}})",
                "/geometry/beta");
    expect_fail(R"({"geometry": {"L": 1, "boundary": "dirichlet"},
                    "physics": {"omega2": 1, "permittivity": {"type": "grid", "values": [[1, 2], [3]]}},
                    "numerics": {}})",
                "/physics/permittivity/values");
    expect_fail(R"({"geometry": {"L": 1, "boundary": "dirichlet"},
                    "physics": {"omega2": 1, "permittivity": {"type": "constant", "value": 1}},
                    "numerics": {"M2": 1}})",
                "/numerics/M2");
}

TEST_CASE("mirror symmetry is enforced for beta in {0, pi}") {
    const std::string asym = R"({
      "geometry": {"L": 1.0, "boundary": "quasiperiodic", "beta": 0.0},
      "physics": {"omega2": 1.0,
                  "permittivity": {"type": "grid", "values": [[1.0, 1.0], [2.0, 2.0]]}},
      "numerics": {}
    })";
    CHECK_THROWS_AS(load_config(asym), std::invalid_argument);

    const std::string sym = R"({
      "geometry": {"L": 1.0, "boundary": "quasiperiodic", "beta": 0.0},
      "physics": {"omega2": 1.0,
                  "permittivity": {"type": "grid", "values": [[1.0, 2.0], [1.0, 2.0]]}},
      "numerics": {}
    })";
    CHECK_NOTHROW(load_config(sym));
}

TEST_CASE("config hash is stable and tolerance-sensitive") {
    auto a = load_config(kDesk1);
    auto b = load_config(kDesk1);
    CHECK(config_hash(a) == config_hash(b));
    b.tol.cluster = 1e-5;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("emitters are deterministic") {
    auto cfg = load_config(kDesk1);
    auto prob1 = build_problem(cfg);
    auto prob2 = build_problem(cfg);
    CHECK(charvals_to_json(prob1) == charvals_to_json(prob2));
    CHECK(charvals_to_csv(prob1) == charvals_to_csv(prob2));
    CHECK(modes_to_json(prob1) == modes_to_json(prob2));
    // scientific CSV format is locale-independent and fixed-width
    CHECK(format_sci(1.0) == "1.000000000000e+00");
    CHECK(format_sci(-0.25) == "-2.500000000000e-01");
}

TEST_CASE("pipeline surfaces a warning when the strip outruns the cover") {
    auto cfg = load_config(kDesk1);
    cfg.im_max = 60.0;  // far beyond the covered strip for the default basis
    auto prob = build_problem(cfg);
    // either the basis grew to cover it or a warning is recorded
    if (prob.cover.top() < cfg.im_max) CHECK(!prob.warnings.empty());
}
