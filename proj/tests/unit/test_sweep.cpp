#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "quasispec/errors.hpp"
#include "quasispec/floquet.hpp"
#include "quasispec/sweep/config.hpp"
#include "quasispec/sweep/dataset.hpp"
#include "quasispec/sweep/presets.hpp"
#include "quasispec/sweep/runner.hpp"
#include "quasispec/sweep/verify.hpp"

using namespace quasispec;
using namespace quasispec::sweep;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "quasispec_unit";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SweepConfig small_landscape(const std::filesystem::path& out) {
  SweepConfig c;
  c.mode = Mode::Landscape;
  c.eps0 = GridAxis::parse("0:3:6", "eps0");
  c.amp = GridAxis::parse("0:3:5", "amp");
  c.out = out;
  c.workers = 1;
  return c;
}

// Off by 2% for every order above zero.
double faulty_bessel(int n, double x) { return bessel_j(n, x) * (n == 0 ? 1.0 : 1.02); }

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("grid axes") {
    const GridAxis a = GridAxis::parse("0:6:61", "eps0");
    CHECK(a.count == 61);
    const auto v = a.values();
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 6.0);
    CHECK(v[10] == doctest::Approx(1.0));
    const GridAxis s = GridAxis::parse("1.05", "eps0");
    CHECK_FALSE(s.swept());
    CHECK(s.values() == std::vector<double>{1.05});
    CHECK_THROWS_AS(GridAxis::parse("0:6", "eps0"), ConfigInvalid);
    CHECK_THROWS_AS(GridAxis::parse("a:b:c", "eps0"), ConfigInvalid);
    CHECK_THROWS_AS(GridAxis::parse("0:6:1", "eps0"), ConfigInvalid);
    CHECK_THROWS_AS(GridAxis::parse("6:0:5", "eps0"), ConfigInvalid);
  }

  TEST_CASE("unit conversion") {
    CHECK(convert_units({7.0, 150.0}).beta == doctest::Approx(2.2397).epsilon(1e-4));
    CHECK(convert_units({4.15, 70.0}).beta == doctest::Approx(2.845).epsilon(1e-3));
    CHECK(convert_units({7.0, std::numeric_limits<double>::infinity()}).beta == 0.0);
    CHECK_THROWS_AS(convert_units({0.0, 100.0}), NonPositiveFrequency);
    CHECK_THROWS_AS(convert_units({-1.0, 100.0}), NonPositiveFrequency);
    CHECK_THROWS_AS(convert_units({7.0, 0.0}), ConfigInvalid);
  }

  TEST_CASE("bath modes need exactly one temperature source") {
    SweepConfig c;
    c.mode = Mode::Absorption;
    c.out = "x.csv";
    CHECK_THROWS_AS(c.resolved_beta(), ConfigInvalid);
    c.beta = 2.0;
    CHECK(c.resolved_beta() == 2.0);
    c.physical = PhysicalUnits{7.0, 150.0};
    CHECK_THROWS_AS(c.resolved_beta(), ConfigInvalid);
    c.beta.reset();
    CHECK(c.resolved_beta() == doctest::Approx(2.2397).epsilon(1e-4));
  }

  TEST_CASE("doubles round-trip through text") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.0, 1e300}) {
      CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(std::isnan(parse_double(format_double(std::nan("")))));
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  }

  TEST_CASE("dataset round trip in both formats") {
    SpectrumDataset d;
    d.metadata = nlohmann::ordered_json{{"mode", "landscape"}, {"delta", 0.37}};
    d.columns = {"eps0_over_hw", "A_over_hw", "value"};
    d.rows = {{0.0, 0.5, 0.1133}, {0.1, 0.5, std::nan("")}};
    for (const std::string ext : {".csv", ".json"}) {
      const auto path = scratch("roundtrip" + ext);
      {
        std::ofstream out(path);
        if (ext == ".csv") write_csv(d, out);
        else write_json(d, out);
      }
      const SpectrumDataset r = read_dataset(path);
      CHECK(r.metadata == d.metadata);
      CHECK(r.columns == d.columns);
      REQUIRE(r.rows.size() == 2);
      CHECK(r.rows[0] == d.rows[0]);
      CHECK(std::isnan(r.rows[1][2]));
      CHECK(r.column("value") == 2);
      CHECK_THROWS_AS(r.column("missing"), ConfigInvalid);
    }
  }

  TEST_CASE("landscape values match the solver") {
    const auto path = scratch("unused.csv");
    const SpectrumDataset d = evaluate_sweep(small_landscape(path));
    REQUIRE(d.rows.size() == 30);
    const std::size_t value = d.column("value");
    for (const Row& r : d.rows) {
      const AtomicHamiltonian h = qubit_hamiltonian(r[0], 0.37, r[1]);
      const auto sol = solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-10));
      CHECK(r[value] == doctest::Approx(quasienergy_gap(sol)).epsilon(1e-9));
    }
  }

  TEST_CASE("worker count does not change the output") {
    SweepConfig c = small_landscape(scratch("one.csv"));
    run_sweep(c);
    SweepConfig c4 = small_landscape(scratch("four.csv"));
    c4.workers = 4;
    run_sweep(c4);
    CHECK(slurp(c.out) == slurp(c4.out));
  }

  TEST_CASE("interrupted sweep resumes") {
    SweepConfig full = small_landscape(scratch("full.csv"));
    run_sweep(full);
    const std::string reference = slurp(full.out);

    SweepConfig part = small_landscape(scratch("part.csv"));
    const auto cut = reference.find('\n', reference.size() / 2);
    {
      std::ofstream out(part.out, std::ios::binary);
      out << reference.substr(0, cut + 5);  // ends mid-row
    }
    const SweepReport report = run_sweep(part);
    CHECK(report.resumed > 0);
    CHECK(report.resumed + report.computed == report.points);
    CHECK(slurp(part.out) == reference);
  }

  TEST_CASE("resume refuses a file from a different sweep") {
    SweepConfig a = small_landscape(scratch("other.csv"));
    run_sweep(a);
    SweepConfig b = a;
    b.delta = 0.5;
    CHECK_THROWS_AS(run_sweep(b), ConfigInvalid);
  }

  TEST_CASE("json output matches csv content") {
    SweepConfig c = small_landscape(scratch("j.json"));
    c.format = Format::Json;
    run_sweep(c);
    SweepConfig k = small_landscape(scratch("k.csv"));
    run_sweep(k);
    const SpectrumDataset dj = read_dataset(c.out);
    const SpectrumDataset dc = read_dataset(k.out);
    CHECK(dj.rows == dc.rows);
    CHECK(dj.metadata == dc.metadata);
  }

  TEST_CASE("presets validate") {
    for (const std::string& id : preset_ids()) {
      SweepConfig c = preset(id);
      c.out = "x.csv";
      CHECK_NOTHROW(c.validate());
      if (c.needs_bath()) CHECK(c.resolved_beta() > 0.0);
    }
    CHECK(preset("fig6").resolved_beta() == doctest::Approx(2.2397).epsilon(1e-4));
    CHECK(preset("fig7").resolved_beta() == doctest::Approx(2.845).epsilon(1e-3));
    CHECK_THROWS_AS(preset("fig9"), ConfigInvalid);
  }

  TEST_CASE("invalid configs name the field") {
    SweepConfig c;
    c.out = "x.csv";
    c.delta = -1.0;
    try {
      c.validate();
      FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid& e) {
      CHECK(std::string(e.what()).find("delta") != std::string::npos);
    }
  }

  TEST_CASE("failed points are recorded without aborting") {
    SweepPlan plan;
    plan.columns = {"k", "v"};
    plan.key_width = 1;
    plan.points = 4;
    plan.key = [](std::size_t i) { return std::vector<double>{static_cast<double>(i)}; };
    plan.evaluate = [](std::size_t i) -> std::vector<Row> {
      if (i == 2) throw NoConvergence("synthetic");
      return {{static_cast<double>(i), 1.0}};
    };
    std::vector<Row> rows;
    std::vector<FailedPoint> failures;
    execute_plan(plan, 2, 0, [&](std::size_t, const std::vector<Row>& r) {
      rows.insert(rows.end(), r.begin(), r.end());
    }, failures);
    REQUIRE(rows.size() == 4);
    CHECK(std::isnan(rows[2][1]));
    CHECK(rows[3][0] == 3.0);
    REQUIRE(failures.size() == 1);
    CHECK(failures[0].index == 2);
  }

  TEST_CASE("quick verification passes") {
    CHECK(verify(VerifyLevel::Quick).passed());
  }

  TEST_CASE("verification catches a faulty Bessel function") {
    const VerifyReport r = verify(VerifyLevel::Quick, faulty_bessel);
    CHECK_FALSE(r.passed());
    bool bessel_failed = false;
    for (const auto& c : r.checks) {
      if ((c.name == "bessel-reference" || c.name == "bessel-neumann-sum") && !c.passed) {
        bessel_failed = true;
      }
    }
    CHECK(bessel_failed);
  }
}
