#include <doctest.h>

#include "algspray/connection.hpp"
#include "algspray/prolong.hpp"
#include "helpers.hpp"

using namespace algspray;
using namespace algspray::test;

namespace {
// generic section with base-dependent coefficients on the rank-2 example
BaseSection generic_xi() { return {{sf(1, 2, "x1"), sf(1, 2, "1 + x1^2")}}; }
BaseSection generic_eta() { return {{sf(1, 2, "2 - x1"), sf(1, 2, "x1")}}; }
}  // namespace

TEST_CASE("anchor of the prolongation acts frame by frame") {
  auto A = make_anchor12();
  auto pts = sample(A);
  auto F = sf(1, 2, "x1^2*y1 + y2^2");
  // horizontal frame: base derivative along the anchor column
  CHECK(max_abs(A, rho_L_apply(A, basis_X(A, 1), F) - sf(1, 2, "x1") * F.dx(0), pts) <= 1e-13);
  // vertical frame: plain fiber derivative
  CHECK(max_abs(A, rho_L_apply(A, basis_V(A, 0), F) - F.dy(0), pts) <= 1e-13);
}

TEST_CASE("frame brackets reproduce the structure functions") {
  auto A = make_so3();
  auto pts = sample(A);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      ProlongSection r = prolong_bracket(A, basis_X(A, a), basis_X(A, b));
      for (int g = 0; g < 3; ++g) r = p_sub(r, p_scale(A.L(g, a, b), basis_X(A, g)));
      CHECK(max_abs(A, r, pts) <= 1e-14);
      CHECK(max_abs(A, prolong_bracket(A, basis_V(A, a), basis_V(A, b)), pts) <= 1e-14);
    }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(max_abs(A, prolong_bracket(A, basis_X(A, a), basis_V(A, b)), pts) <= 1e-14);
}

TEST_CASE("prolongation bracket is antisymmetric and obeys Leibniz") {
  auto A = make_anchor12();
  auto pts = sample(A);
  ProlongSection u = complete_lift_P(A, generic_xi());
  ProlongSection w = p_add(basis_X(A, 0), p_scale(sf(1, 2, "y2"), basis_V(A, 1)));

  ProlongSection ab = prolong_bracket(A, u, w);
  ProlongSection ba = prolong_bracket(A, w, u);
  CHECK(max_abs(A, p_add(ab, ba), pts) <= 1e-13);

  // [[u, f w]] = f [[u, w]] + (rho_L(u) f) w
  auto f = sf(1, 2, "x1*y1");
  ProlongSection lhs = prolong_bracket(A, u, p_scale(f, w));
  ProlongSection rhs = p_add(p_scale(f, ab), p_scale(rho_L_apply(A, u, f), w));
  CHECK(max_abs(A, p_sub(lhs, rhs), pts) <= 1e-12);
}

TEST_CASE("complete lift intertwines the brackets") {
  auto A = make_anchor12();
  auto pts = sample(A);
  BaseSection xi = generic_xi(), eta = generic_eta();
  ProlongSection lhs = prolong_bracket(A, complete_lift_P(A, xi), complete_lift_P(A, eta));
  ProlongSection rhs = complete_lift_P(A, A.bracket(xi, eta));
  CHECK(max_abs(A, p_sub(lhs, rhs), pts) <= 1e-12);
}

TEST_CASE("vertical lift brackets") {
  auto A = make_anchor12();
  auto pts = sample(A);
  BaseSection xi = generic_xi(), eta = generic_eta();
  // [[xi^V, eta^V]] = 0 and [[xi^C, eta^V]] = [xi, eta]^V
  CHECK(max_abs(A, prolong_bracket(A, vertical_lift_P(A, xi), vertical_lift_P(A, eta)), pts) <=
        1e-13);
  ProlongSection lhs = prolong_bracket(A, complete_lift_P(A, xi), vertical_lift_P(A, eta));
  ProlongSection rhs = vertical_lift_P(A, A.bracket(xi, eta));
  CHECK(max_abs(A, p_sub(lhs, rhs), pts) <= 1e-12);
}

TEST_CASE("complete lift on the rank-2 example has the expected fiber part") {
  auto A = make_anchor12();
  auto pts = sample(A);
  // e1 is constant, so the fiber part is -y^b L^a_{1b}: here -y2 in slot 1
  ProlongSection c = complete_lift_P(A, A.basis_section(0));
  CHECK(max_abs(A, c.Z[0] - A.one(), pts) <= 1e-14);
  CHECK(max_abs(A, c.Z[1], pts) <= 1e-14);
  CHECK(max_abs(A, c.V[0] + A.y(1), pts) <= 1e-14);
  CHECK(max_abs(A, c.V[1], pts) <= 1e-14);
}

TEST_CASE("vertical endomorphism squares to zero and swaps the frames") {
  auto A = make_anchor12();
  auto pts = sample(A);
  for (int a = 0; a < 2; ++a) {
    ProlongSection jx = vertical_endomorphism(A, basis_X(A, a));
    CHECK(max_abs(A, p_sub(jx, basis_V(A, a)), pts) <= 1e-14);
    CHECK(max_abs(A, vertical_endomorphism(A, basis_V(A, a)), pts) <= 1e-14);
  }
  ProlongSection s = p_add(p_scale(sf(1, 2, "x1*y1"), basis_X(A, 1)),
                           p_scale(sf(1, 2, "y2^2"), basis_V(A, 0)));
  CHECK(max_abs(A, vertical_endomorphism(A, vertical_endomorphism(A, s)), pts) <= 1e-14);
}

TEST_CASE("maps between pullback sections and the prolongation") {
  auto A = make_anchor12();
  auto pts = sample(A);
  PullbackSection s{{sf(1, 2, "x1*y2"), sf(1, 2, "y1^2")}};
  // i embeds vertically, so j (i s) = 0: the sequence is exact at the middle
  ProlongSection em = map_i(A, s);
  CHECK(max_abs(A, em.Z, pts) <= 1e-14);
  for (int a = 0; a < 2; ++a) {
    CHECK(max_abs(A, em.V[a] - s.comp[a], pts) <= 1e-14);
    CHECK(max_abs(A, map_j(em).comp[a], pts) <= 1e-14);
  }
  // j extracts the Z part of a general section, and J = i after j
  ProlongSection gen = p_add(p_scale(sf(1, 2, "x1*y1"), basis_X(A, 1)),
                             p_scale(sf(1, 2, "y2^2"), basis_V(A, 0)));
  PullbackSection jz = map_j(gen);
  for (int a = 0; a < 2; ++a) CHECK(max_abs(A, jz.comp[a] - gen.Z[a], pts) <= 1e-14);
  ProlongSection lhs = vertical_endomorphism(A, gen);
  ProlongSection rhs = map_i(A, map_j(gen));
  CHECK(max_abs(A, p_sub(lhs, rhs), pts) <= 1e-14);
}

TEST_CASE("Liouville section and canonical section") {
  auto A = make_anchor12();
  auto pts = sample(A);
  ProlongSection C = liouville(A);
  PullbackSection d = canonical_delta(A);
  for (int a = 0; a < 2; ++a) {
    CHECK(max_abs(A, C.Z[a], pts) <= 1e-14);
    CHECK(max_abs(A, C.V[a] - A.y(a), pts) <= 1e-14);
    CHECK(max_abs(A, d.comp[a] - A.y(a), pts) <= 1e-14);
  }
}

TEST_CASE("homogeneity defect detects the fiber degree") {
  auto A = make_so3();
  auto S = make_so3_spray();
  auto pts = sample(A);
  ProlongSection s = spray_section(A, S);
  CHECK(max_abs(A, homogeneity_defect(A, s, 2), pts) <= 1e-13);
  CHECK(max_abs(A, homogeneity_defect(A, s, 1), pts) > 0.1);
}
