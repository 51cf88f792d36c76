#include <doctest.h>

#include "freegamma/convolution.hpp"

#include <cmath>

using namespace fg;

TEST_CASE("parameter dictionaries") {
  const auto g = map_fbp_to_gfg(2, 2);
  CHECK(g.t == 2);
  CHECK(g.theta == 2);
  CHECK(g.lambda == Rational(3, 2));

  const auto e = map_eta(3, 1);
  CHECK((e.t == 3 && e.theta == 1 && e.lambda == 1));

  const auto inv = map_inverse_sum(1, 1);
  CHECK(inv.scale == Rational(1, 9));
  CHECK(inv.P == 3);

  const auto mp = map_inverse_mp_of_gfg1(ExactGFGParams::make(2, 1, 1));
  CHECK(mp.theta == Rational(1, 4));
  CHECK(mp.lambda == 3);

  CHECK_THROWS_AS(map_fbp_to_gfg(1, 1), Error);
  CHECK_THROWS_AS(map_gfg_to_fbp(ExactGFGParams::make(1, 1, 1)), Error);
}

TEST_CASE("beta prime round trip is exact") {
  for (auto a : {Rational(1, 3), Rational(1), Rational(5, 2)})
    for (auto b : {Rational(7, 6), Rational(2), Rational(9)}) {
      const auto back = map_gfg_to_fbp(map_fbp_to_gfg(a, b));
      CHECK(back.scale == 1);
      CHECK(back.params.a == a);
      CHECK(back.params.b == b);
    }
}

TEST_CASE("reversal map is an involution") {
  for (auto t : {Rational(1, 2), Rational(1), Rational(3)})
    for (auto theta : {Rational(1, 3), Rational(1), Rational(2)})
      for (auto f : {Rational(1, 4), Rational(1, 2), Rational(9, 10)}) {
        const auto p = ExactGFGParams::make(t, theta, 1 + f * t / theta);
        const auto r1 = map_reversed(p);
        const auto r2 = map_reversed(r1.params);
        // mu = (D_{s1} mu')^{<-1>} = D_{s2/s1}(mu'').
        const auto back = dilate(r2.params, r2.scale / r1.scale);
        CHECK(back.t == p.t);
        CHECK(back.theta == p.theta);
        CHECK(back.lambda == p.lambda);
      }
  CHECK_THROWS_AS(map_reversed(ExactGFGParams::make(1, 1, 2)), Error);
  CHECK_THROWS_AS(map_reversed(ExactGFGParams::make(1, 1, 1)), Error);
}

TEST_CASE("textual dispatcher") {
  const auto r = map_params("inverse_sum", {Rational(1), Rational(1)});
  CHECK(r.scale == Rational(1, 9));
  CHECK(r.values.at(0).second == 3);
  CHECK_THROWS_AS(map_params("nope", {}), Error);
  CHECK_THROWS_AS(map_params("eta", {Rational(1)}), Error);
}

TEST_CASE("identity catalog names") {
  for (auto id : kIdentityCatalog) CHECK(parse_identity(identity_name(id)) == id);
  CHECK_FALSE(parse_identity("NOT_AN_IDENTITY").has_value());
}

TEST_CASE("every identity holds on its default parameter sets") {
  for (auto id : kIdentityCatalog) {
    const auto sets = default_parameter_sets(id);
    CHECK(sets.size() == 10);
    for (const auto& ip : sets) {
      const auto rep = verify_identity(id, ip);
      INFO(identity_name(id), " ", ip.describe(id), " deviation ", rep.max_abs_deviation);
      CHECK(rep.grid.points.size() >= 50);
      CHECK(rep.pass);
      CHECK(rep.warnings.empty());
    }
  }
}

TEST_CASE("reference identity deviations") {
  IdentityParams ip;
  ip.gfg = GFGParams::make(1, 1, 2);
  CHECK(verify_identity(IdentityId::MultFormB, ip, real_grid(-0.499, -0.001, 50)).max_abs_deviation < 1e-12);
  CHECK(verify_identity(IdentityId::AddSemigroup, ip).max_abs_deviation == 0.0);
  IdentityParams inv;
  inv.p = 1;
  inv.n = 1;
  CHECK(verify_identity(IdentityId::InvSumLaw, inv).max_abs_deviation < 1e-14);
}

TEST_CASE("identities detect wrong parameters") {
  IdentityParams ip;
  ip.gfg = GFGParams::make(1, 1, 2);
  auto rep = verify_identity(IdentityId::MultFormA, ip);
  CHECK(rep.pass);
  ip.gfg = GFGParams::make(1, 1, 1);
  CHECK_THROWS_AS(verify_identity(IdentityId::MultFormA, ip), Error);
}

TEST_CASE("serial and parallel identity checks agree") {
  IdentityParams ip;
  ip.gfg = GFGParams::make(2, 0.5, 5);
  const auto a = verify_identity(IdentityId::MeixnerShift, ip, 1e-10, ExecutionPolicy::serial);
  const auto b = verify_identity(IdentityId::MeixnerShift, ip, 1e-10, ExecutionPolicy::parallel);
  CHECK(a.max_abs_deviation == b.max_abs_deviation);
}

TEST_CASE("free beta witness") {
  const auto w = free_beta_fid_witness(1.0);
  CHECK(std::abs(w.root_pair[0] - Complex(1, 2 * std::sqrt(6.0)) / 25.0) < 1e-15);
  CHECK(std::abs(w.root_pair[0].imag()) > 0);
  CHECK_FALSE(w.is_fid);
  for (double p : {0.1, 0.5, 2.0, 7.0}) {
    const auto v = free_beta_fid_witness(p);
    const double k = (3 * p + 2) * (3 * p + 2);
    CHECK(std::abs(v.root_pair[0] * v.root_pair[1] - std::pow(p, 8) / k) < 1e-14 * std::pow(p, 8) / k + 1e-300);
    CHECK(std::abs(v.root_pair[0] + v.root_pair[1] - 2 * std::pow(p, 5) / k) < 1e-14 * std::pow(p, 5) + 1e-300);
    CHECK(v.residual < 1e-14);
  }
}
