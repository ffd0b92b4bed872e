#include <doctest.h>

#include <cmath>
#include <sstream>

#include "esrk/app/initial.hpp"
#include "esrk/diagnostics.hpp"

using namespace esrk;

TEST_CASE("records of trivial fields") {
  const SpectralGrid g(16, 10.0);
  const auto model = make_model(Mobility::SH, 0.25, 2.0, g);
  const EnergyRecord z = record_stage(model, Field(g), 0, 1, 0.0);
  CHECK(z.energy == 0.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.h2semi == 0.0);
  CHECK(z.maxnorm == 0.0);
  const double c = 0.6, eps = 0.25;
  const EnergyRecord r = record_stage(model, Field::constant(g, c), 3, 2, 0.5);
  CHECK(r.energy == doctest::Approx(100.0 * (c * c / 2 + c * c * c * c / 4 - eps * c * c / 2)).epsilon(1e-14));
  CHECK(r.mean == doctest::Approx(c));
  CHECK(r.l2 == doctest::Approx(10.0 * c));
  CHECK(r.n == 3);
  CHECK(r.stage == 2);
}

TEST_CASE("steady run has a vanishing inequality") {
  const SpectralGrid g(16, 10.0);
  Stepper st(make_model(Mobility::SH, 0.25, 2.0, g), eerk_method("eerk2"), 0.1);
  EnergyMonitor mon;
  run(st, Field(g), 3, mon.hook());
  CHECK(mon.records().size() == 9);
  for (const auto& r : mon.records()) {
    CHECK(r.ineq_lhs == 0.0);
    CHECK(r.ineq_rhs == 0.0);
  }
  CHECK(check_sandwich(mon.records()).pass);
  CHECK(check_monotonic(mon.records()).pass);
}

TEST_CASE("inequality rhs against a dense per-mode oracle") {
  const SpectralGrid g(16, 16.0);
  for (Mobility mob : {Mobility::SH, Mobility::PFC}) {
    for (const char* name : {"eerk2", "ierk3", "cif3_ralston:nif"}) {
      INFO(name);
      Stepper st(make_model(mob, 0.25, 2.0, g), make_method(name), 0.2);
      st.step(app::random_field(g, 0.6, 17));
      std::vector<double> e;
      for (const auto& f : st.stage_fields()) e.push_back(energy(f, 0.25));
      const InequalityPartials p = energy_inequality(st, e);
      const auto& modes = st.stage_modes();
      const std::size_t s = static_cast<std::size_t>(st.stages());
      for (std::size_t k = 1; k <= s; ++k) {
        double oracle = 0.0;
        for (std::size_t q = 0; q < g.size(); ++q) {
          const double m = st.mobility()[q];
          if (m == 0.0) continue;
          const SmallMatrix& d = st.diff_matrix_at(q);
          SmallMatrix dk(k);
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= i; ++j) dk(i, j) = d(i, j);
          std::vector<double> re(k), im(k);
          for (std::size_t i = 0; i < k; ++i) {
            const Complex delta = modes[i + 1][q] - modes[i][q];
            re[i] = delta.real();
            im[i] = delta.imag();
          }
          oracle += (dk.bilinear(re, re) + dk.bilinear(im, im)) / m;
        }
        oracle *= g.area() / st.tau();
        CHECK(std::abs(p.rhs[k - 1] - oracle) <= 1e-10 * (1 + std::abs(oracle)));
        CHECK(p.lhs[k - 1] == doctest::Approx(e[k] - e[0]));
        CHECK(p.lhs[k - 1] <= p.rhs[k - 1] + 1e-9 * (1 + std::abs(p.lhs[k - 1])));
        CHECK(p.rhs[k - 1] <= 1e-9);
      }
    }
  }
}

TEST_CASE("monotonic check modes and reporting") {
  auto rec = [](int n, int stage, double e) {
    EnergyRecord r;
    r.n = n;
    r.stage = stage;
    r.energy = e;
    return r;
  };
  // stage 2 dips below the final stage: fine under StageBound, not Consecutive
  std::vector<EnergyRecord> rs{rec(1, 1, 5.0), rec(1, 2, 3.0), rec(1, 3, 4.0), rec(2, 1, 4.0),
                               rec(2, 2, 3.5), rec(2, 3, 3.0)};
  CHECK(check_monotonic(rs).pass);
  const CheckReport c = check_monotonic(rs, 1e-9, MonotoneMode::Consecutive);
  CHECK_FALSE(c.pass);
  CHECK(c.n == 1);
  CHECK(c.stage == 3);
  rs.push_back(rec(3, 1, 4.5));
  const CheckReport up = check_monotonic(rs);
  CHECK_FALSE(up.pass);
  CHECK(up.n == 3);
  CHECK(up.worst == doctest::Approx(0.5));
  std::vector<EnergyRecord> flat{rec(1, 1, 2.0), rec(1, 2, 2.0), rec(2, 1, 2.0)};
  CHECK(check_monotonic(flat, 0.0).pass);
  CHECK(to_string(up).find("FAIL") != std::string::npos);
}

TEST_CASE("bounds and volume checks") {
  EnergyRecord r;
  r.l2 = 1.0;
  r.h2semi = 0.5;
  r.mean = 0.25;
  CHECK(check_bounds({r}, 1.5).pass);
  CHECK_FALSE(check_bounds({r}, 1.4).pass);
  CHECK(check_volume({r}, 4.0, 1.0, 1.0).pass);
  CHECK_FALSE(check_volume({r}, 4.0, 1.0 + 1e-9, 1.0).pass);
  EnergyRecord s;
  s.stage = 2;
  s.ineq_lhs = -1.0;
  s.ineq_rhs = -2.0;
  CHECK_FALSE(check_sandwich({s}).pass);
  s.ineq_rhs = -0.5;
  CHECK(check_sandwich({s}).pass);
}

TEST_CASE("certified run diagnostics") {
  const SpectralGrid g(32, 32.0);
  const double eps = 0.25;
  const Field u0 = app::random_field(g, 0.1, 1);
  for (Mobility mob : {Mobility::SH, Mobility::PFC}) {
    Stepper st(make_model(mob, eps, 2.0, g), make_method("cif2_ralston:tif"), 0.1);
    EnergyMonitor mon;
    run(st, u0, 30, mon.hook());
    const auto& rs = mon.records();
    CHECK(check_monotonic(rs).pass);
    CHECK(check_bounds(rs, c0_bound(energy(u0, eps), eps, g.area())).pass);
    CHECK(check_sandwich(rs).pass);
    if (mob == Mobility::PFC) CHECK(check_volume(rs, g.area(), volume(u0), norm_l2(u0)).pass);
  }
}

TEST_CASE("energy csv layout") {
  std::ostringstream os;
  EnergyRecord r;
  r.energy = 1.0 / 3.0;
  write_energy_csv(os, {r});
  const std::string s = os.str();
  CHECK(s.rfind("n,stage,t,energy,l2,h2semi,maxnorm,mean,ineq_lhs,ineq_rhs\n", 0) == 0);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
}
