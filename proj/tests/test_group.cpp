#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kitaev/group.hpp"

using namespace kitaev;

namespace {

// Direct evaluation of exp(2 pi i sum chi_j g_j / n_j) in floating point.
std::complex<double> pairing_oracle(const GroupSpec& G, const Character& chi, const GroupElement& g) {
  double angle = 0.0;
  for (std::size_t j = 0; j < G.rank(); ++j)
    angle += 2.0 * std::numbers::pi * chi.residues[j] * g.residues[j] / G.orders()[j];
  return std::polar(1.0, angle);
}

}  // namespace

TEST(Group, ComposeExamples) {
  GroupSpec z2({2}), z3({3}), z2z3({2, 3});
  EXPECT_EQ(z2.compose(GroupElement{{1}}, GroupElement{{1}}), GroupElement{{0}});
  EXPECT_EQ(z3.compose(GroupElement{{1}}, GroupElement{{2}}), GroupElement{{0}});
  EXPECT_EQ(z2z3.compose(GroupElement{{1, 2}}, GroupElement{{1, 2}}), (GroupElement{{0, 1}}));
}

TEST(Group, ComposeRejectsMismatch) {
  GroupSpec z2({2});
  EXPECT_THROW(z2.compose(GroupElement{{1, 0}}, GroupElement{{1}}), SpecMismatch);
  EXPECT_THROW(z2.compose(GroupElement{{2}}, GroupElement{{1}}), SpecMismatch);
}

TEST(Group, InverseExamples) {
  GroupSpec z4({4}), z2({2});
  EXPECT_EQ(z4.inverse(GroupElement{{3}}), GroupElement{{1}});
  EXPECT_EQ(z2.inverse(GroupElement{{1}}), GroupElement{{1}});
  EXPECT_EQ(z4.inverse(z4.neutral()), z4.neutral());
}

TEST(Group, PairingExamples) {
  GroupSpec z2({2}), z4({4});
  EXPECT_EQ(z2.pairing(Character{{1}}, GroupElement{{1}}).value(), std::complex<double>(-1, 0));
  EXPECT_TRUE(z4.pairing(z4.trivial_character(), GroupElement{{3}}).is_one());
  EXPECT_EQ(z4.pairing(Character{{1}}, GroupElement{{1}}).value(), std::complex<double>(0, 1));
}

TEST(Group, RejectsTrivialFactor) {
  EXPECT_THROW(GroupSpec({1}), std::invalid_argument);
  EXPECT_THROW(GroupSpec({}), std::invalid_argument);
  EXPECT_THROW(GroupSpec({2, 0}), std::invalid_argument);
}

TEST(Group, EnumerationOrder) {
  GroupSpec z2({2}), z2z2({2, 2}), z3({3});
  ASSERT_EQ(z2.elements().size(), 2u);
  EXPECT_EQ(z2.elements()[1], GroupElement{{1}});
  const auto e = z2z2.elements();
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0], (GroupElement{{0, 0}}));
  EXPECT_EQ(e[1], (GroupElement{{0, 1}}));
  EXPECT_EQ(e[2], (GroupElement{{1, 0}}));
  EXPECT_EQ(e[3], (GroupElement{{1, 1}}));
  EXPECT_EQ(z3.elements().size(), 3u);
  EXPECT_EQ(z3.elements()[0], z3.neutral());
}

TEST(Group, EnumerationGuard) {
  GroupSpec big({1000, 1001});
  EXPECT_THROW(big.elements(), GuardExceeded);
}

TEST(Group, PropertiesExhaustive) {
  for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}, {2, 3}, {6}, {2, 2, 3}, {12}}) {
    GroupSpec G(orders);
    const auto els = G.elements();
    const auto chars = G.characters();
    ASSERT_EQ(els.size(), G.order());
    for (std::size_t i = 0; i < els.size(); ++i) EXPECT_EQ(G.index_of(els[i].residues), i);
    for (const auto& chi : chars) {
      std::complex<double> sum = 0.0;
      for (const auto& g : els) {
        sum += G.pairing(chi, g).value();
        EXPECT_LT(std::abs(G.pairing(chi, g).value() - pairing_oracle(G, chi, g)), 1e-12);
        for (const auto& h : els)
          EXPECT_EQ(G.pairing(chi, G.compose(g, h)), G.pairing(chi, g) * G.pairing(chi, h));
      }
      const double expected = G.is_neutral(chi) ? static_cast<double>(G.order()) : 0.0;
      EXPECT_LT(std::abs(sum - expected), 1e-12) << G.to_string();
    }
    for (const auto& g : els) EXPECT_TRUE(G.is_neutral(G.compose(g, G.inverse(g))));
  }
}

TEST(Group, TablesMatchLabels) {
  GroupSpec G({2, 4});
  GroupTables t(G);
  for (std::uint32_t a = 0; a < t.order(); ++a) {
    for (std::uint32_t b = 0; b < t.order(); ++b) {
      EXPECT_EQ(t.compose(a, b), G.index_of(G.compose(G.element_at(a), G.element_at(b)).residues));
      const Phase p = G.pairing(G.character_at(a), G.element_at(b));
      EXPECT_EQ(Phase(t.pairing(a, b), t.exponent()), p);
    }
    EXPECT_EQ(t.inverse(a), G.index_of(G.inverse(G.element_at(a)).residues));
  }
}

TEST(Phase, Arithmetic) {
  const Phase a(1, 4), b(3, 4);
  EXPECT_TRUE((a * b).is_one());
  EXPECT_EQ(a.pow(2), Phase(1, 2));
  EXPECT_EQ(Phase(-1, 4), b);
  EXPECT_EQ(Phase(2, 4), Phase(1, 2));
  EXPECT_EQ(Phase(1, 2).value(), std::complex<double>(-1, 0));
}
