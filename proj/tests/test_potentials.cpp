#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bandedge/potentials.hpp"
#include "test_support.hpp"

using namespace bandedge;

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((PotentialSpec{Family::Lame, 0, 0.5, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((PotentialSpec{Family::Lame, -2, 0.5, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((PotentialSpec{Family::Lame, 1, 0.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((PotentialSpec{Family::Lame, 1, 1.0, 0.0}.validate()), std::domain_error);
  CHECK_NOTHROW((PotentialSpec{Family::AssociatedLame, 3, 0.99, -1.0}.validate()));
}

TEST_CASE("pointwise potential values") {
  const PotentialSpec lame{Family::Lame, 2, 0.5, 0.0};
  CHECK(evaluate(lame, 0.0) == 0.0);
  // sn(K) = 1, so V(K) = j(j+1) m = 3 for j = 2, m = 1/2.
  CHECK(evaluate(lame, complete_K(0.5)) == Catch::Approx(3.0).margin(1e-12));

  const PotentialSpec assoc{Family::AssociatedLame, 1, 0.5, 0.0};
  CHECK(evaluate(assoc, 0.0) == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("susy offsets for the published cases") {
  const PotentialSpec lame2{Family::Lame, 2, 0.5, 0.0};
  const auto off = susy_offset(lame2);
  CHECK(off.published);
  CHECK(off.value == Catch::Approx(-3.0 + 2.0 * std::sqrt(0.75)).epsilon(1e-14));
  CHECK(off.value == Catch::Approx(-1.2679491924311228).epsilon(1e-12));

  const PotentialSpec assoc1{Family::AssociatedLame, 1, 0.5, 0.0};
  const auto aoff = susy_offset(assoc1);
  CHECK(aoff.published);
  CHECK(aoff.value == Catch::Approx(-2.5 + 2.0 * std::sqrt(0.5)).epsilon(1e-14));
  CHECK(aoff.value == Catch::Approx(-1.0857864376269049).epsilon(1e-12));

  const auto none = susy_offset(PotentialSpec{Family::Lame, 3, 0.5, 0.0});
  CHECK_FALSE(none.published);
  CHECK(none.value == 0.0);
}

TEST_CASE("fundamental periods") {
  const double K = complete_K(0.5);
  CHECK(fundamental_period(PotentialSpec{Family::Lame, 2, 0.5, 0.0}) ==
        Catch::Approx(2.0 * K).epsilon(1e-15));
  CHECK(fundamental_period(PotentialSpec{Family::Lame, 2, 0.5, 0.0}) ==
        Catch::Approx(3.7081493546).epsilon(1e-9));
  CHECK(fundamental_period(PotentialSpec{Family::AssociatedLame, 1, 0.5, 0.0}) ==
        Catch::Approx(K).epsilon(1e-15));
}

TEST_CASE("the reported period is a period, on a 512-point grid") {
  for (const auto& spec :
       {PotentialSpec{Family::Lame, 1, 0.3, 0.0}, PotentialSpec{Family::Lame, 3, 0.8, 0.5},
        PotentialSpec{Family::AssociatedLame, 1, 0.5, 0.0},
        PotentialSpec{Family::AssociatedLame, 2, 0.9, -1.0}}) {
    const double period = fundamental_period(spec);
    double worst = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double x = i * period / 512;
      worst = std::max(worst, std::abs(evaluate(spec, x + period) - evaluate(spec, x)));
    }
    CAPTURE(family_name(spec.family), spec.j, spec.m);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("K/2 is not a period of the associated potential") {
  const PotentialSpec spec{Family::AssociatedLame, 1, 0.5, 0.0};
  const double K = complete_K(0.5);
  double worst = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double x = i * K / 512;
    worst = std::max(worst, std::abs(evaluate(spec, x + K / 2) - evaluate(spec, x)));
  }
  CHECK(worst > 0.01);
}

TEST_CASE("evenness") {
  for (const auto& spec : {PotentialSpec{Family::Lame, 2, 0.5, 0.0},
                           PotentialSpec{Family::AssociatedLame, 2, 0.7, 0.0}}) {
    for (int i = 0; i < 100; ++i) {
      const double x = 6.0 * test_support::halton(i, 2) - 3.0;
      REQUIRE(std::abs(evaluate(spec, -x) - evaluate(spec, x)) < 1e-12);
    }
  }
}

TEST_CASE("potential depends on j only through j(j+1)") {
  // j -> -j-1 leaves j(j+1) unchanged, hence the potential too.
  for (int j = 1; j <= 8; ++j) {
    const long long reflected = static_cast<long long>(-j - 1) * (-j);
    CHECK(reflected == static_cast<long long>(j) * (j + 1));
  }
}
