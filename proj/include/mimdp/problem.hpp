#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mimdp/error.hpp"
#include "mimdp/graph.hpp"
#include "mimdp/set_spec.hpp"

namespace mimdp {

enum class Objective { min, max, exists };

inline std::string to_string(Objective o) {
  switch (o) {
    case Objective::min: return "min";
    case Objective::max: return "max";
    case Objective::exists: return "exists";
  }
  return "?";
}

inline Objective parse_objective(std::string_view s) {
  if (s == "min") return Objective::min;
  if (s == "max") return Objective::max;
  if (s == "exists") return Objective::exists;
  throw InvalidArgument("unknown objective '" + std::string(s) + "' (expected min, max or exists)");
}

/// A (sigma, rho) vertex-subset problem together with its objective.
struct Problem {
  SetSpec sigma;
  SetSpec rho;
  Objective objective = Objective::min;
  std::string name;

  int d_value() const noexcept { return std::max(sigma.d_value(), rho.d_value()); }
};

/// One row of the built-in problem catalog.
struct CatalogEntry {
  std::string name;
  std::string title;
  Objective default_objective;
  /// Rows whose sets depend on a parameter d; nullopt for fixed rows.
  std::optional<int> default_parameter;
  std::function<SetSpec(int)> sigma;
  std::function<SetSpec(int)> rho;
  /// The d column of the row as a function of the parameter.
  std::function<int(int)> tabulated_d;
};

/// The sixteen standard (sigma, rho) rows. Default objectives are our choice
/// where the standard problem admits more than one; see README.
inline const std::vector<CatalogEntry>& catalog() {
  using S = SetSpec;
  auto fixed = [](S s) { return [s](int) { return s; }; };
  auto constant = [](int d) { return [d](int) { return d; }; };
  static const std::vector<CatalogEntry> rows = {
      {"independent-set", "Independent set", Objective::max, std::nullopt, fixed(S::finite({0})), fixed(S::naturals()), constant(1)},
      {"dominating-set", "Dominating set", Objective::min, std::nullopt, fixed(S::naturals()), fixed(S::positive()), constant(1)},
      {"maximal-independent-set", "Maximal independent set", Objective::min, std::nullopt, fixed(S::finite({0})), fixed(S::positive()), constant(1)},
      {"total-dominating-set", "Total dominating set", Objective::min, std::nullopt, fixed(S::positive()), fixed(S::positive()), constant(1)},
      {"strong-stable-set", "Strong stable set / 2-packing", Objective::max, std::nullopt, fixed(S::finite({0})), fixed(S::finite({0, 1})), constant(2)},
      {"perfect-code", "Perfect code / efficient dominating set", Objective::exists, std::nullopt, fixed(S::finite({0})), fixed(S::finite({1})), constant(2)},
      {"total-nearly-perfect-set", "Total nearly perfect set", Objective::max, std::nullopt, fixed(S::finite({0, 1})), fixed(S::finite({0, 1})), constant(2)},
      {"weakly-perfect-dominating-set", "Weakly perfect dominating set", Objective::min, std::nullopt, fixed(S::finite({0, 1})), fixed(S::finite({1})), constant(2)},
      {"total-perfect-dominating-set", "Total perfect dominating set", Objective::exists, std::nullopt, fixed(S::finite({1})), fixed(S::finite({1})), constant(2)},
      {"induced-matching", "Induced matching", Objective::max, std::nullopt, fixed(S::finite({1})), fixed(S::naturals()), constant(2)},
      {"dominating-induced-matching", "Dominating induced matching", Objective::min, std::nullopt, fixed(S::finite({1})), fixed(S::positive()), constant(2)},
      {"perfect-dominating-set", "Perfect dominating set", Objective::min, std::nullopt, fixed(S::naturals()), fixed(S::finite({1})), constant(2)},
      {"d-dominating-set", "d-dominating set", Objective::min, 2, fixed(S::naturals()), [](int d) { return S::at_least(d); }, [](int d) { return d; }},
      {"induced-d-regular-subgraph", "Induced d-regular subgraph", Objective::max, 2, [](int d) { return S::finite({d}); }, fixed(S::naturals()), [](int d) { return d + 1; }},
      {"min-degree-subgraph", "Subgraph of minimum degree >= d", Objective::max, 2, [](int d) { return S::at_least(d); }, fixed(S::naturals()), [](int d) { return d; }},
      {"max-degree-induced-subgraph", "Induced subgraph of maximum degree <= d", Objective::max, 1, [](int d) { return S::up_to(d); }, fixed(S::naturals()), [](int d) { return d + 1; }},
  };
  return rows;
}

inline const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& row : catalog())
    if (row.name == name) return row;
  std::string known;
  for (const auto& row : catalog()) known += (known.empty() ? "" : ", ") + row.name;
  throw InvalidArgument("unknown problem '" + std::string(name) + "'; available: " + known);
}

/// Looks up a catalog row; `parameter` applies to the parameterized rows only.
inline Problem catalog_lookup(std::string_view name, std::optional<int> parameter = std::nullopt) {
  const CatalogEntry& row = catalog_entry(name);
  if (parameter && !row.default_parameter)
    throw InvalidArgument("problem '" + row.name + "' takes no parameter");
  int d = parameter.value_or(row.default_parameter.value_or(0));
  if (row.default_parameter && d < 1) throw InvalidArgument("problem parameter must be >= 1");
  return Problem{row.sigma(d), row.rho(d), row.default_objective, row.name};
}

/// q x q matrix of count constraints for distance-r vertex partitioning.
struct ConstraintMatrix {
  int r = 1;
  std::vector<std::vector<SetSpec>> entries;

  std::size_t q() const noexcept { return entries.size(); }
  const SetSpec& at(std::size_t i, std::size_t j) const { return entries.at(i).at(j); }

  int d_value() const noexcept {
    int d = 0;
    for (const auto& row : entries)
      for (const auto& e : row) d = std::max(d, e.d_value());
    return d;
  }

  void validate() const {
    if (entries.empty()) throw InvalidArgument("constraint matrix needs q >= 1");
    if (r < 1) throw InvalidArgument("constraint matrix distance must be >= 1");
    for (const auto& row : entries)
      if (row.size() != entries.size()) throw InvalidArgument("constraint matrix is not square");
  }

  std::string to_string() const {
    std::ostringstream out;
    out << "lcvp " << q() << ' ' << r << '\n';
    for (const auto& row : entries) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].to_string();
      out << '\n';
    }
    return out.str();
  }
};

/// The embedding [[sigma, N], [rho, N]] of a (sigma, rho) problem; class 1 is S.
inline ConstraintMatrix sigma_rho_matrix(const Problem& p, int r = 1) {
  return ConstraintMatrix{r, {{p.sigma, SetSpec::naturals()}, {p.rho, SetSpec::naturals()}}};
}

/// diag {0}, off-diagonal N.
inline ConstraintMatrix coloring_matrix(std::size_t q, int r = 1) {
  ConstraintMatrix m{r, std::vector<std::vector<SetSpec>>(q, std::vector<SetSpec>(q, SetSpec::naturals()))};
  for (std::size_t i = 0; i < q; ++i) m.entries[i][i] = SetSpec::finite({0});
  return m;
}

/// Matrix file: `lcvp <q> <r>` then q rows of q set-spec tokens.
inline ConstraintMatrix parse_matrix(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(0, "empty matrix file");
  auto& [hline, header] = lines.front();
  if (header.size() != 3 || header[0] != "lcvp") throw ParseError(hline, "malformed header, expected 'lcvp <q> <r>'");
  long long q = detail::parse_int(header[1], hline, "class count");
  long long r = detail::parse_int(header[2], hline, "distance");
  if (q < 1) throw ParseError(hline, "class count must be >= 1");
  if (r < 1) throw ParseError(hline, "distance must be >= 1");
  if (lines.size() != static_cast<std::size_t>(q) + 1)
    throw ParseError(hline, "expected " + std::to_string(q) + " matrix rows, found " + std::to_string(lines.size() - 1));
  ConstraintMatrix m;
  m.r = static_cast<int>(r);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto& [line_no, tok] = lines[i];
    if (tok.size() != static_cast<std::size_t>(q))
      throw ParseError(line_no, "row has " + std::to_string(tok.size()) + " entries, matrix is not square");
    std::vector<SetSpec> row;
    for (auto t : tok) {
      try {
        row.push_back(parse_set_spec(t));
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
    }
    m.entries.push_back(std::move(row));
  }
  return m;
}

}  // namespace mimdp
