#include <gtest/gtest.h>

#include "mimdp/problem.hpp"

using namespace mimdp;

TEST(Catalog, SixteenRows) { EXPECT_EQ(catalog().size(), 16u); }

TEST(Catalog, Lookup) {
  Problem is = catalog_lookup("independent-set");
  EXPECT_EQ(is.sigma.to_string(), "{0}");
  EXPECT_EQ(is.rho.to_string(), "N");
  EXPECT_EQ(is.d_value(), 1);
  Problem pc = catalog_lookup("perfect-code");
  EXPECT_EQ(pc.sigma.to_string(), "{0}");
  EXPECT_EQ(pc.rho.to_string(), "{1}");
  EXPECT_EQ(pc.d_value(), 2);
  Problem dd = catalog_lookup("d-dominating-set", 3);
  EXPECT_EQ(dd.sigma.to_string(), "N");
  EXPECT_EQ(dd.rho.to_string(), ">=3");
  EXPECT_EQ(dd.d_value(), 3);
  EXPECT_THROW(catalog_lookup("no-such-problem"), InvalidArgument);
  EXPECT_THROW(catalog_lookup("independent-set", 2), InvalidArgument);
}

TEST(Catalog, DColumnMatchesDValue) {
  for (const auto& row : catalog())
    for (int param : {1, 2, 3}) {
      if (!row.default_parameter && param > 1) break;
      Problem p = catalog_lookup(row.name, row.default_parameter ? std::optional<int>(param) : std::nullopt);
      EXPECT_EQ(p.d_value(), row.tabulated_d(param)) << row.name << " d=" << param;
    }
}

TEST(Matrix, Coloring) {
  ConstraintMatrix m = parse_matrix("lcvp 3 1\n{0} N N\nN {0} N\nN N {0}\n");
  EXPECT_EQ(m.q(), 3u);
  EXPECT_EQ(m.r, 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m.at(i, j).to_string(), i == j ? "{0}" : "N");
  EXPECT_EQ(m.to_string(), coloring_matrix(3).to_string());
}

TEST(Matrix, SingleClass) {
  ConstraintMatrix m = parse_matrix("lcvp 1 2\n{0,1}\n");
  EXPECT_EQ(m.q(), 1u);
  EXPECT_EQ(m.r, 2);
}

TEST(Matrix, SigmaRhoEmbedding) {
  ConstraintMatrix m = sigma_rho_matrix(catalog_lookup("dominating-set"));
  EXPECT_EQ(m.at(0, 0).to_string(), "N");
  EXPECT_EQ(m.at(0, 1).to_string(), "N");
  EXPECT_EQ(m.at(1, 0).to_string(), "N+");
  EXPECT_EQ(m.at(1, 1).to_string(), "N");
}

TEST(Matrix, Errors) {
  EXPECT_THROW(parse_matrix("lcvp 2 1\n{0} N\n"), ParseError);
  EXPECT_THROW(parse_matrix("lcvp 2 1\n{0} N N\nN {0}\n"), ParseError);
  EXPECT_THROW(parse_matrix("lcvp 1 1\n{x}\n"), ParseError);
  EXPECT_THROW(parse_matrix("lcvp 1 0\nN\n"), ParseError);
}

TEST(Objective, Parse) {
  EXPECT_EQ(parse_objective("min"), Objective::min);
  EXPECT_EQ(parse_objective("max"), Objective::max);
  EXPECT_EQ(parse_objective("exists"), Objective::exists);
  EXPECT_THROW(parse_objective("best"), InvalidArgument);
}
