#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clampbeam/analysis.hpp"
#include "clampbeam/builtin_examples.hpp"
#include "clampbeam/errors.hpp"
#include "clampbeam/problem.hpp"
#include "oracles.hpp"

using namespace clampbeam;
using namespace clampbeam::analysis;

namespace {

expr::Expression canonical_rhs(int id) { return canonicalize(builtin_example(id).file.problem).rhs(); }

expr::Env random_point(const DomainBox& box) {
  expr::Env p{};
  for (std::size_t i = 0; i < expr::kVarCount; ++i) {
    const auto [lo, hi] = box.range(static_cast<expr::Var>(i));
    p[i] = oracle::uniform(lo, hi);
  }
  return p;
}

}  // namespace

TEST(ContractionFactor, Examples) {
  const double sqrt3 = std::numbers::sqrt3;
  EXPECT_NEAR(contraction_factor({18, 37.0 / 4, 1 / (8 * sqrt3), 3.0 / 64}), 0.2401, 5e-5);
  EXPECT_NEAR(contraction_factor({103, 0, 0, 0}), 103.0 / 384, 1e-15);
  EXPECT_EQ(contraction_factor({0, 0, 0, 0}), 0.0);
  EXPECT_NEAR(contraction_factor({0, 72 * sqrt3, 0, 0}), 1.0, 1e-14);
  EXPECT_THROW(contraction_factor({-1, 0, 0, 0}), DomainError);
}

TEST(DomainBox, Ranges) {
  const DomainBox box(36);
  EXPECT_NEAR(box.u_bound(), 36.0 / 384, 1e-16);
  EXPECT_NEAR(box.y_bound(), 36.0 / (72 * std::numbers::sqrt3), 1e-15);
  EXPECT_EQ(box.v_bound(), 36.0);
  EXPECT_TRUE(box.contains({0.5, 0, 0, 0, 0}));
  EXPECT_FALSE(box.contains({0.5, 1, 0, 0, 0}));
  EXPECT_THROW(DomainBox(0), DomainError);
}

TEST(CheckConditions, Example1) {
  const auto r = check_conditions(canonical_rhs(1), 36);
  const double sqrt3 = std::numbers::sqrt3;
  const double sup = 12 + (36.0 / 384) * 36 / 2 + 36 / (72 * sqrt3) * (36 + 1) / 4;
  EXPECT_NEAR(r.sup_f, sup, 1e-9);
  EXPECT_NEAR(r.K[0], 18, 1e-9);
  EXPECT_NEAR(r.K[1], 37.0 / 4, 1e-9);
  EXPECT_NEAR(r.K[2], 1 / (8 * sqrt3), 1e-9);
  EXPECT_NEAR(r.K[3], 3.0 / 64, 1e-9);
  for (auto p : r.K_provenance) EXPECT_EQ(p, Provenance::symbolic);
  EXPECT_TRUE(r.lemma1_ok);
  EXPECT_TRUE(r.theorem1_ok);
  EXPECT_NEAR(r.q, 0.2401, 1e-4);
}

TEST(CheckConditions, SuppliedConstantsWin) {
  CheckOptions opts;
  opts.K = {18, 37.0 / 4, std::nullopt, 3.0 / 64};
  const auto r = check_conditions(canonical_rhs(1), 36, opts);
  EXPECT_EQ(r.K[0], 18.0);
  EXPECT_EQ(r.K_provenance[0], Provenance::supplied);
  EXPECT_EQ(r.K_provenance[2], Provenance::symbolic);
}

TEST(CheckConditions, Example3) {
  const auto r = check_conditions(canonical_rhs(3), 6);
  EXPECT_TRUE(r.theorem1_ok);
  EXPECT_LE(r.K[0], 12545.0 / 4096 + 1e-9);
  EXPECT_GT(r.K[0], 2.0);
  EXPECT_EQ(r.K[1], 0.0);
  EXPECT_EQ(r.K[2], 0.0);
  EXPECT_EQ(r.K[3], 0.0);
  EXPECT_LE(r.sup_f, 3.0);
}

TEST(CheckConditions, ZeroRhs) {
  const auto r = check_conditions(expr::parse("0"), 1);
  EXPECT_EQ(r.sup_f, 0.0);
  EXPECT_EQ(r.q, 0.0);
  EXPECT_TRUE(r.theorem1_ok);
}

TEST(CheckConditions, SmallBoxFailsExistenceCheck) {
  const auto r = check_conditions(canonical_rhs(1), 1);
  EXPECT_GE(r.sup_f, 12.0);
  EXPECT_FALSE(r.lemma1_ok);
  EXPECT_FALSE(r.theorem1_ok);
}

TEST(CheckConditions, FiniteDifferenceFallback) {
  // d/du of abs(u) is undefined at u = 0, which the lattice hits.
  const auto r = check_conditions(expr::parse("abs(u)"), 6);
  EXPECT_EQ(r.K_provenance[0], Provenance::finite_difference);
  EXPECT_NEAR(r.K[0], 1.0, 1e-6);
}

TEST(CheckConditions, UndefinedInBox) {
  try {
    check_conditions(canonical_rhs(5), 6);
    FAIL();
  } catch (const UndefinedInDomain& e) {
    EXPECT_TRUE(DomainBox(6).contains(e.point()));
  }
}

TEST(CheckConditions, EstimatesDominateRandomPairs) {
  for (int id : {1, 2, 3, 4, 6}) {
    const auto f = canonical_rhs(id);
    const double M = *builtin_example(id).file.M;
    const DomainBox box(M);
    const auto r = check_conditions(f, M);
    for (int trial = 0; trial < 1000; ++trial) {
      expr::Env p = random_point(box);
      expr::Env q = random_point(box);
      q[0] = p[0];
      double bound = 0;
      for (std::size_t i = 0; i < 4; ++i) bound += r.K[i] * std::abs(p[i + 1] - q[i + 1]);
      EXPECT_LE(std::abs(f.eval(p) - f.eval(q)), bound * (1 + 1e-9) + 1e-12) << "example " << id;
      EXPECT_LE(std::abs(f.eval(p)), r.sup_f * (1 + 1e-12)) << "example " << id;
    }
  }
}

TEST(CheckConditions, MonotoneInM) {
  const auto f = canonical_rhs(2);
  double last_sup = 0;
  Lipschitz last_k{};
  for (double M : {1.0, 2.0, 5.0, 10.0}) {
    const auto r = check_conditions(f, M);
    EXPECT_GE(r.sup_f, last_sup - 1e-12);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_GE(r.K[i], last_k[i] - 1e-12) << M;
    last_sup = r.sup_f;
    last_k = r.K;
  }
}

TEST(AprioriBound, Values) {
  const auto b0 = apriori_bound(0.25, 2.0, 0);
  EXPECT_DOUBLE_EQ(b0.p, 8.0);
  const auto b3 = apriori_bound(0.25, 2.0, 3);
  EXPECT_DOUBLE_EQ(b3.p, 8.0 * 0.421875);
  EXPECT_DOUBLE_EQ(b3.u(), b3.p / 384);
  EXPECT_DOUBLE_EQ(b3.y(), b3.p / (72 * std::numbers::sqrt3));
  EXPECT_EQ(b3.v(), b3.p);
  EXPECT_THROW(apriori_bound(0.5, 1, 1), DomainError);
  EXPECT_THROW(apriori_bound(-0.1, 1, 1), DomainError);
  EXPECT_THROW(apriori_bound(0.1, -1, 1), DomainError);
  EXPECT_THROW(apriori_bound(0.1, 1, -1), DomainError);
}
