#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dosc/errors.hpp"
#include "dosc/limits.hpp"
#include "dosc/polynomials.hpp"

using namespace dosc;

namespace {

bool strictly_decreasing(const std::vector<double>& e) {
  for (std::size_t k = 1; k < e.size(); ++k) {
    if (!(e[k] < e[k - 1])) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("limits") {
  TEST_CASE("default tables drop tenfold") {
    const auto tables = default_limit_tables();
    REQUIRE(tables.size() == 6);
    for (const auto& t : tables) {
      INFO(t.relation_id);
      CHECK(t.parameter_values.size() == 3);
      CHECK(t.reduces_by(10.0));
      CHECK(t.monotone());
      for (const auto& col : t.errors) {
        for (double e : col) CHECK((std::isfinite(e) && e >= 0.0));
      }
    }
  }

  TEST_CASE("degree zero") {
    CHECK(limit_kravchuk_to_charlier(1.0, 0, 3).errors[0] == std::vector<double>{0, 0, 0});
    CHECK(limit_charlier_to_hermite(0, 0.3).errors[0] == std::vector<double>{0, 0, 0});
    const auto k = limit_kravchuk_to_hermite(0, 0.0, 0.5);
    for (double e : k.errors[0]) CHECK(e <= 1e-15);
    const auto m = limit_meixner_to_hermite(0, 0.3, 0.5);
    for (double e : m.errors[0]) CHECK(e == 0.0);
    CHECK(limit_meixner_to_charlier(1.0, 0, 4).errors[0] == std::vector<double>{0, 0, 0});
    const auto l = limit_meixner_to_laguerre(2.0, 0, 1.0);
    for (double e : l.errors[0]) CHECK(e <= 1e-15);
  }

  TEST_CASE("kravchuk to charlier") {
    const auto t = limit_kravchuk_to_charlier(1.0, 2, 3);
    CHECK(strictly_decreasing(t.errors[0]));
    CHECK(t.errors[0].back() <= 1e-3 * std::abs(poly_value(CharlierParams{1.0}, 2, 3)));
    CHECK(t.rate(0) == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("charlier to hermite") {
    const auto t = limit_charlier_to_hermite(2, 0.5);
    CHECK(strictly_decreasing(t.errors[0]));
    CHECK(strictly_decreasing(t.errors[1]));
    for (double o : t.offsets) CHECK(std::abs(o) <= 0.5 / std::sqrt(2.0 * 100.0));
    const auto odd = limit_charlier_to_hermite(1, 0.0);
    for (double e : odd.errors[0]) CHECK(e == 0.0);
  }

  TEST_CASE("kravchuk to hermite") {
    const auto t = limit_kravchuk_to_hermite(2, 0.0, 0.5);
    for (const auto& col : t.errors) CHECK(strictly_decreasing(col));
    CHECK(t.errors[1].back() <= 1e-2);
    CHECK_THROWS_AS(limit_kravchuk_to_hermite(12, 0.0, 0.5, {10.0}), DegreeError);
  }

  TEST_CASE("meixner to hermite") {
    const auto t = limit_meixner_to_hermite(2, 0.3, 0.5);
    for (const auto& col : t.errors) CHECK(strictly_decreasing(col));
    CHECK(t.errors[2].back() <= 1e-2);
    CHECK(t.errors[3].back() <= 1e-2);
    CHECK(t.offsets[0] != 0.0);
  }

  TEST_CASE("meixner to charlier") {
    const auto t = limit_meixner_to_charlier(1.0, 3, 4);
    for (const auto& col : t.errors) CHECK(strictly_decreasing(col));
    CHECK(t.rate(0) == doctest::Approx(1.0).epsilon(0.02));
    CHECK_THROWS_AS(limit_meixner_to_charlier(2.0, 1, 1, {1.5}), ParameterError);
  }

  TEST_CASE("meixner to laguerre and coulomb") {
    const auto t = limit_meixner_to_laguerre(2.0, 2, 1.0);
    REQUIRE(t.columns.size() == 2);
    for (const auto& col : t.errors) CHECK(strictly_decreasing(col));
    CHECK(t.errors[0].back() <= 1e-2);
    // L_1^1(2) = 0
    const auto z = limit_meixner_to_laguerre(2.0, 1, 2.0);
    CHECK(std::abs(poly_value(LaguerreParams{1.0}, 1, 2.0)) <= 1e-15);
    CHECK(strictly_decreasing(z.errors[1]));
    CHECK(limit_meixner_to_laguerre(2.5, 1, 1.0).columns.size() == 1);
    CHECK(limit_meixner_to_laguerre(4.0, 1, 1.0).columns.size() == 2);
  }

  TEST_CASE("exact kravchuk") {
    const auto t = exact_kravchuk();
    for (double e : t.errors[0]) CHECK(e <= 1e-12);
  }

  TEST_CASE("contractions") {
    const auto checks = contraction_checks(6, 1e4);
    CHECK(checks.size() == 6);
    for (const auto& c : checks) {
      INFO(c.name);
      CHECK(c.error <= 1e-3);
    }
    // the deviation of sqrt(n (N - n + 1) / N) is about (n - 1) sqrt(n) / 2N
    CHECK(checks[0].error == doctest::Approx(std::sqrt(6.0) * 5.0 / 2e4).epsilon(0.01));
  }

  TEST_CASE("CSV") {
    std::ostringstream out;
    write_table_csv(out, limit_meixner_to_charlier(1.0, 3, 4));
    CHECK(out.str().rfind("param,polynomial,wavefunction,offset\n100,", 0) == 0);
  }
}
