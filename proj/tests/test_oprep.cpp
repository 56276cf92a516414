#include <catch2/catch_amalgamated.hpp>

#include <qdc/oprep.hpp>

using namespace qdc;
using Catch::Matchers::ContainsSubstring;

namespace {

LatticeWindow wide() {
  LatticeWindow w;
  w.n_max = 12;
  w.k_min = -14;
  w.k_max = 14;
  return w;
}

void expect_all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    INFO(c.group << " | " << c.name << " : residual " << c.residual << " (tol "
                 << c.tolerance << ") " << c.detail);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("window indexing round-trips") {
  LatticeWindow w = wide();
  w.l_min = -2;
  w.l_max = 3;
  w.validate();
  REQUIRE(w.dim() == 12 * 29 * 6);
  for (int i = 0; i < w.dim(); ++i) REQUIRE(w.index(w.site(i)) == i);
  REQUIRE(w.contains({0, -14, -2}));
  REQUIRE_FALSE(w.contains({12, 0, 0}));
  REQUIRE_FALSE(w.contains({0, 15, 0}));
  REQUIRE_FALSE(w.contains({0, 0, 4}));
}

TEST_CASE("window validation rejects degenerate shapes") {
  LatticeWindow w = wide();
  w.n_max = 0;
  REQUIRE_THROWS_AS(w.validate(), OperatorError);
  w = wide();
  w.k_min = 0;
  REQUIRE_THROWS_AS(w.validate(), OperatorError);
  w = wide();
  w.q_value = mpq_class(3, 2);
  REQUIRE_THROWS_AS(w.validate(), OperatorError);
}

TEST_CASE("interior mask counts and membership") {
  const LatticeWindow w = wide();
  const SupportRadius r{6, 6, 0};
  const std::vector<char> mask = interior_mask(w, r);
  REQUIRE(mask_count(mask) == 6 * 17);  // n in [0,5], k in [-8,8]
  CHECK(mask[w.index({0, 0, 0})] == 1);  // n = 0 is a genuine floor
  CHECK(mask[w.index({5, 8, 0})] == 1);
  CHECK(mask[w.index({6, 0, 0})] == 0);
  CHECK(mask[w.index({0, 9, 0})] == 0);
  REQUIRE_THROWS_AS(require_interior(w, {0, 15, 0}, "probe"), WindowError);
  REQUIRE_THROWS_WITH(require_interior(w, {0, 15, 0}, "probe"),
                      ContainsSubstring("window too small"));
}

TEST_CASE("generator columns match the weighted-shift model") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);

  const auto* ca = rep.a.column(w.index({2, 0, 0}));
  REQUIRE(ca != nullptr);
  REQUIRE(ca->size() == 1);
  CHECK(ca->begin()->first == w.index({1, 0, 0}));
  CHECK(ca->begin()->second.real() == Catch::Approx(0.9682458365518543).margin(1e-15));

  const auto* cc = rep.c.column(w.index({2, 0, 0}));
  REQUIRE(cc != nullptr);
  CHECK(cc->begin()->first == w.index({2, -1, 0}));
  CHECK(cc->begin()->second.real() == Catch::Approx(0.25).margin(0));

  const auto* cb = rep.b.column(w.index({2, 0, 0}));
  REQUIRE(cb != nullptr);
  CHECK(cb->begin()->first == w.index({2, 1, 0}));
  CHECK(cb->begin()->second.real() == Catch::Approx(-0.125).margin(0));

  // lambda_0 = 0: the bottom level is annihilated, not truncated
  CHECK(rep.a.column(w.index({0, 3, 0})) == nullptr);

  const auto* cw = rep.w.column(w.index({3, 5, 0}));
  REQUIRE(cw != nullptr);
  CHECK(cw->begin()->first == w.index({3, 4, 0}));
  CHECK(cw->begin()->second.real() == 1.0);
}

TEST_CASE("representation relations hold") {
  const Rep rep = build_rep(wide());
  auto checks = verify_representation(rep);
  REQUIRE(checks.size() == 13);
  expect_all_pass(checks);
}

TEST_CASE("the quantum determinant represents as the identity") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);
  const LatticeOperator det = represent(rep, Element::parse("a*d - q*b*c"));
  CHECK(interior_residual(det - LatticeOperator::identity(w), "determinant") < 1e-14);
}

TEST_CASE("F columns of the standard split family") {
  const LatticeWindow w = wide();
  const LatticeOperator F = build_F(w, standard_fspec());

  const auto* col = F.column(w.index({2, 0, 0}));
  REQUIRE(col != nullptr);
  REQUIRE(col->size() == 3);
  CHECK(col->at(w.index({1, -1, 0})).real() ==
        Catch::Approx(0.9682458365518543).margin(1e-15));  // lambda_2 q^0
  CHECK(col->at(w.index({2, 0, 0})).real() == Catch::Approx(0.0625).margin(0));  // q^4
  CHECK(col->at(w.index({3, 1, 0})).real() ==
        Catch::Approx(0.4960783708246108).margin(1e-15));  // lambda_3 q^1
}

TEST_CASE("F is self-adjoint and tridiagonal") {
  const LatticeWindow w = wide();
  const FBundle fb = make_f_bundle(w, standard_fspec());
  const Rep rep = build_rep(w);
  expect_all_pass(verify_f_properties(rep, fb));
}

TEST_CASE("families violating the admissibility conditions are refused by name") {
  const LatticeWindow w = wide();

  FSpec bad_T = standard_fspec();
  bad_T.T = fam_T_identity();
  REQUIRE_THROWS_WITH(build_F(w, bad_T), ContainsSubstring("wTw* = q T"));

  FSpec bad_sign = remark4_fspec(-1);
  bad_sign.T = fam_T_identity();
  REQUIRE_THROWS_WITH(build_F(w, bad_sign), ContainsSubstring("wTw* = eps T"));

  FSpec bad_R = standard_fspec();
  OpFamily drifting;
  drifting.name = "diag(q^k)";
  drifting.col = [](const LatticeWindow& win, const Site& s, ColumnSink& out) {
    out.push_back({s, std::pow(win.q(), s.k)});
  };
  bad_R.Rdoubleprime = drifting;
  REQUIRE_THROWS_WITH(build_F(w, bad_R), ContainsSubstring("wR''w*"));
}

TEST_CASE("R splits into the homogeneous and shift-invariant parts") {
  const LatticeWindow w = wide();
  const LatticeOperator Rdiag = materialize(w, fam_Rp_diag());
  const LatticeOperator Rconv = materialize(w, fam_R_convolution({0.3, 0.0, 0.3}));

  auto [p1, pp1] = decompose_R(w, Rdiag);
  CHECK(interior_residual(p1 - Rdiag, "R' part") < 1e-15);
  CHECK(max_masked_column_norm(pp1, interior_mask(w, {0, 1, 0})) < 1e-15);

  auto [p2, pp2] = decompose_R(w, Rconv);
  CHECK(max_masked_column_norm(p2, interior_mask(w, {0, 2, 0})) < 1e-15);
  CHECK(interior_residual(pp2 - Rconv, "R'' part") < 1e-15);

  auto [p3, pp3] = decompose_R(w, Rdiag + Rconv);
  CHECK(interior_residual(p3 - Rdiag, "mixed R' part") < 1e-12);
  CHECK(interior_residual(pp3 - Rconv, "mixed R'' part") < 1e-12);
}

TEST_CASE("one-form operators track the word support radius") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);
  const LatticeOperator F = build_F(w, standard_fspec());
  // words u F v with |u| + |v| = 4 letters plus one F unit on each axis
  const LatticeOperator om = omega_op(rep, F, Element::parse("q^2*b^2"));
  CHECK(om.radius().n == 5);
  CHECK(om.radius().k == 5);
  CHECK(om.radius().l == 0);
}

TEST_CASE("the flat-calculus ideal vanishes under the standard family") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);

  FSpec plain = standard_fspec();
  const FBundle fb0 = make_f_bundle(w, plain);
  auto checks = verify_omega_vanishing(rep, fb0, CalculusId::three_d);
  REQUIRE(checks.size() == 6);
  expect_all_pass(checks);

  FSpec with_conv = standard_fspec();
  with_conv.Rdoubleprime = fam_R_convolution({0.3, 0.0, 0.3});
  const FBundle fb1 = make_f_bundle(w, with_conv);
  checks = verify_omega_vanishing(rep, fb1, CalculusId::three_d);
  REQUIRE(checks.size() == 6);
  expect_all_pass(checks);
}

TEST_CASE("a flat-family F does not kill the signed ideals") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);
  const FBundle fb = make_f_bundle(w, standard_fspec());
  auto checks = verify_omega_vanishing(rep, fb, CalculusId::four_d_plus);
  REQUIRE(checks.size() == 9);
  CHECK_FALSE(all_pass(checks));
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.residual);
  CHECK(worst > 1e-3);
}

TEST_CASE("omega vanishing needs room for the word radius") {
  // wide enough in k for the admissibility conditions, too shallow in n for
  // the degree-2 words of the ideal
  LatticeWindow w;
  w.n_max = 3;
  w.k_min = -4;
  w.k_max = 4;
  const Rep rep = build_rep(w);
  const FBundle fb = make_f_bundle(w, standard_fspec());
  REQUIRE_THROWS_AS(verify_omega_vanishing(rep, fb, CalculusId::three_d), WindowError);
}

TEST_CASE("invariant one-form closed shapes") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);
  const FBundle fb = make_f_bundle(w, standard_fspec());
  auto checks = verify_invariant_forms(rep, fb);
  REQUIRE(checks.size() == 5);
  expect_all_pass(checks);
}

TEST_CASE("signed families kill the quotient ideals for both signs") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);

  const FBundle plus = make_f_bundle(w, remark4_fspec(+1));
  auto checks = verify_omega_vanishing(rep, plus, CalculusId::q3_plus);
  REQUIRE(checks.size() == 10);
  expect_all_pass(checks);

  const FBundle minus = make_f_bundle(w, remark4_fspec(-1));
  checks = verify_omega_vanishing(rep, minus, CalculusId::q3_minus);
  REQUIRE(checks.size() == 10);
  expect_all_pass(checks);
}

TEST_CASE("one-forms commute past generators with the module weights") {
  const LatticeWindow w = clamp_k(wide(), 12);
  REQUIRE(w.k_min == -12);
  REQUIRE(w.k_max == 12);
  const Rep rep = build_rep(w);

  FSpec with_conv = standard_fspec();
  with_conv.Rdoubleprime = fam_R_convolution({0.3, 0.0, 0.3});
  for (const FSpec& spec : {standard_fspec(), with_conv}) {
    const LatticeOperator F = build_F(w, spec);
    auto checks = verify_bimodule_relations(rep, F);
    REQUIRE(checks.size() == 12);
    expect_all_pass(checks);
  }
}

TEST_CASE("omega is additive in F") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);
  FSpec with_conv = standard_fspec();
  with_conv.Rdoubleprime = fam_R_convolution({0.2, 0.0, 0.2});
  const LatticeOperator F1 = build_F(w, standard_fspec());
  const LatticeOperator F2 = build_F(w, with_conv);
  expect_all_pass(verify_omega_linearity(rep, F1, F2));
}

TEST_CASE("degree-bounded monomial basis") {
  CHECK(pbw_monomials(0).size() == 1);
  CHECK(pbw_monomials(1).size() == 5);  // unit plus the four generators
  CHECK(pbw_monomials(2).size() == 14);
}

TEST_CASE("form-module columns are independent in the single tower") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);

  const FBundle fb = make_f_bundle(w, standard_fspec());
  const IndependenceResult full = independence_rank(rep, fb);
  CHECK(full.monomials == 14);
  CHECK(full.columns == 42);
  // the single tower folds the b-form against the c-form block
  CHECK(full.rank == 28);

  FSpec no_rp = standard_fspec();
  no_rp.Rprime = fam_zero();
  const FBundle fb0 = make_f_bundle(w, no_rp);
  const IndependenceResult dropped = independence_rank(rep, fb0);
  CHECK(dropped.zero_columns == 14);
  CHECK(dropped.rank == 14);
}

TEST_CASE("form-module columns reach full rank in the block-sum model") {
  LatticeWindow w = wide();
  w.l_min = -2;
  w.l_max = 2;
  const Rep rep = build_rep(w);

  const FBundle fb = make_f_bundle(w, regular_fspec(1.0, 1.0));
  const IndependenceResult full = independence_rank(rep, fb);
  CHECK(full.columns == 42);
  CHECK(full.rank == 42);

  const FBundle fb0 = make_f_bundle(w, regular_fspec(1.0, 0.0));
  const IndependenceResult dropped = independence_rank(rep, fb0);
  CHECK(dropped.zero_columns == 14);
  CHECK(dropped.rank == 28);
}

TEST_CASE("closed forms agree with the word expansion in the block-sum model") {
  LatticeWindow w;
  w.n_max = 12;
  w.k_min = -8;
  w.k_max = 8;
  w.l_min = -4;
  w.l_max = 4;
  const Rep rep = build_rep(w);
  const FBundle fb = make_f_bundle(w, regular_fspec(1.0, 1.0));
  auto checks = verify_invariant_forms(rep, fb);
  REQUIRE(checks.size() == 4);  // no pointwise anchor on the copy axis
  expect_all_pass(checks);
}

TEST_CASE("invariant state and gram matrix") {
  // the admissibility conditions need k half-width >= 3 even though the state
  // itself lives at k = 0
  LatticeWindow w;
  w.n_max = 40;
  w.k_min = -4;
  w.k_max = 4;
  w.l_min = -2;
  w.l_max = 42;
  auto checks = verify_invariant_state(w, 1.0, 1.0);
  REQUIRE(checks.size() == 9);
  expect_all_pass(checks);

  const RegularBundle rb = build_regular(w, 1.0, 1.0);
  const auto g = gram_matrix(rb);
  CHECK(std::abs(g[0][0] - Complex(0.5625)) < 1e-10);
  CHECK(std::abs(g[1][1] - Complex(0.5625)) < 1e-10);
  CHECK(std::abs(g[0][0] - g[2][2]) < 1e-12);
  CHECK(std::abs(haar_expectation(rb, Element::parse("b*c")) - Complex(-0.4)) < 1e-12);

  LatticeWindow flat = wide();
  REQUIRE_THROWS_AS(build_regular(flat, 1.0, 1.0), WindowError);
  LatticeWindow short_l = w;
  short_l.l_max = 20;
  REQUIRE_THROWS_AS(build_regular(short_l, 1.0, 1.0), WindowError);
}

TEST_CASE("column norms grow geometrically as the window widens") {
  auto checks = verify_growth_probe(mpq_class(1, 2));
  REQUIRE(checks.size() == 25);
  expect_all_pass(checks);
}

TEST_CASE("unit-disk model relations") {
  // the disk generator is a localized product whose entries grow like q^{-k},
  // so products of two differentials amplify round-off near wide k edges; a
  // moderate k half-width keeps the absolute residuals at the documented level
  auto checks = verify_disk(clamp_k(wide(), 8));
  REQUIRE(checks.size() == 10);
  expect_all_pass(checks);
}

TEST_CASE("sphere generator differentials have the split closed forms") {
  const LatticeWindow w = wide();
  const Rep rep = build_rep(w);

  FSpec with_conv = standard_fspec();
  with_conv.Rdoubleprime = fam_R_convolution({0.3, 0.0, 0.3});
  for (const FSpec& spec : {standard_fspec(), with_conv}) {
    const FBundle fb = make_f_bundle(w, spec);
    auto checks = verify_sphere_operators(rep, fb);
    REQUIRE(checks.size() == 9);
    expect_all_pass(checks);
  }
}
