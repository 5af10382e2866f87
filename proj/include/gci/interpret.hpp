// Copyright 2026 The GCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Interpretation predicates over graphs: color, motif and functional-group
// leaves combined with AND / OR / NOT, and the text format that defines them.
//
// Spec file grammar, one definition per line ('#' starts a comment):
//
//   NAME = expr
//   expr := and_expr ("OR" and_expr)*
//   and_expr := term ("AND" term)*
//   term := ["NOT"] atom
//   atom := color(c) | hascolor(c) | motif(square) | fg(group) | "(" expr ")"
//
// color(c) holds when strictly more than half the nodes have color c;
// hascolor(c) holds when at least one node does.

#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gci/common.hpp"
#include "gci/graph.hpp"
#include "gci/mlkit.hpp"
#include "gci/smiles.hpp"

namespace gci::interp {

enum class Group { kHydroxyl, kKetone, kPhenyl, kChlorine, kFluorine, kCarboxyl, kAromaticRing };
inline constexpr std::size_t kNumGroups = 7;

inline constexpr std::array<std::string_view, kNumGroups> kGroupNames = {
    "hydroxyl", "ketone", "phenyl", "chlorine", "fluorine", "carboxyl", "aromatic_ring"};

inline std::string_view group_name(Group g) { return kGroupNames[static_cast<std::size_t>(g)]; }

inline std::optional<Group> parse_group(std::string_view s) {
  for (std::size_t i = 0; i < kNumGroups; ++i)
    if (kGroupNames[i] == s) return static_cast<Group>(i);
  return std::nullopt;
}

struct Expr {
  enum class Kind { kColor, kHasColor, kSquare, kGroup, kAnd, kOr, kNot };
  Kind kind = Kind::kSquare;
  Color color = Color::kBlue;
  Group group = Group::kHydroxyl;
  std::vector<Expr> args;

  static Expr majority(Color c) { return {Kind::kColor, c, {}, {}}; }
  static Expr has_color(Color c) { return {Kind::kHasColor, c, {}, {}}; }
  static Expr square() { return {Kind::kSquare, {}, {}, {}}; }
  static Expr fg(Group g) { return {Kind::kGroup, {}, g, {}}; }
  static Expr all_of(Expr a, Expr b) { return {Kind::kAnd, {}, {}, {std::move(a), std::move(b)}}; }
  static Expr any_of(Expr a, Expr b) { return {Kind::kOr, {}, {}, {std::move(a), std::move(b)}}; }
  static Expr negate(Expr a) { return {Kind::kNot, {}, {}, {std::move(a)}}; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const Expr& a : args) d = std::max(d, a.depth());
    return d + 1;
  }

  bool needs_colors() const {
    if (kind == Kind::kColor || kind == Kind::kHasColor) return true;
    for (const Expr& a : args)
      if (a.needs_colors()) return true;
    return false;
  }

  bool needs_atoms() const {
    if (kind == Kind::kGroup) return true;
    for (const Expr& a : args)
      if (a.needs_atoms()) return true;
    return false;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::kColor: return "color(" + std::string(color_name(color)) + ")";
      case Kind::kHasColor: return "hascolor(" + std::string(color_name(color)) + ")";
      case Kind::kSquare: return "motif(square)";
      case Kind::kGroup: return "fg(" + std::string(group_name(group)) + ")";
      case Kind::kNot:
        // The grammar allows one NOT per term, so a nested negation is bracketed.
        return args[0].kind == Kind::kNot ? "NOT (" + args[0].to_string() + ")" : "NOT " + args[0].to_string();
      case Kind::kAnd:
      case Kind::kOr: {
        const char* op = kind == Kind::kAnd ? " AND " : " OR ";
        std::string s = "(";
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? op : "") + args[i].to_string();
        return s + ")";
      }
    }
    return "";
  }
};

struct Interpretation {
  std::string name;
  Expr expr;
};

using InterpretationSet = std::vector<Interpretation>;

inline constexpr std::size_t kMaxDepth = 16;

// ------------------------------------------------------------------ parser

namespace detail {

class SpecLineParser {
 public:
  SpecLineParser(std::string_view line, long lineno) : s_(line), line_(lineno) {}

  Interpretation parse() {
    Interpretation h;
    skip_ws();
    h.name = identifier();
    if (h.name.empty()) throw syntax("expected an interpretation name");
    skip_ws();
    if (!eat('=')) throw syntax("expected '='");
    h.expr = expr(1);
    skip_ws();
    if (pos_ != s_.size()) throw syntax("unexpected trailing text");
    return h;
  }

 private:
  Error syntax(const std::string& what) const {
    return Error(Errc::kSyntaxError, what, line_, static_cast<long>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  bool keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  void check_depth(std::size_t depth) const {
    if (depth > kMaxDepth) throw syntax("expression nested deeper than " + std::to_string(kMaxDepth));
  }

  Expr expr(std::size_t depth) {
    check_depth(depth);
    Expr left = and_expr(depth + 1);
    while (keyword("OR")) left = Expr::any_of(std::move(left), and_expr(depth + 1));
    return left;
  }

  Expr and_expr(std::size_t depth) {
    check_depth(depth);
    Expr left = term(depth + 1);
    while (keyword("AND")) left = Expr::all_of(std::move(left), term(depth + 1));
    return left;
  }

  Expr term(std::size_t depth) {
    check_depth(depth);
    if (keyword("NOT")) return Expr::negate(atom(depth + 1));
    return atom(depth);
  }

  Expr atom(std::size_t depth) {
    check_depth(depth);
    if (eat('(')) {
      Expr e = expr(depth + 1);
      if (!eat(')')) throw syntax("expected ')'");
      return e;
    }
    skip_ws();
    const long col = static_cast<long>(pos_) + 1;
    const std::string fn = identifier();
    if (fn.empty()) throw syntax("expected a predicate");
    if (!eat('(')) throw syntax("expected '(' after " + fn);
    const std::string arg = identifier();
    if (arg.empty()) throw syntax("expected an argument");
    if (!eat(')')) throw syntax("expected ')'");
    auto unknown = [&] {
      return Error(Errc::kUnknownAtom, fn + "(" + arg + ")", line_, col);
    };
    if (fn == "color" || fn == "hascolor") {
      const auto c = parse_color(arg);
      if (!c) throw unknown();
      return fn == "color" ? Expr::majority(*c) : Expr::has_color(*c);
    }
    if (fn == "motif") {
      if (arg != "square") throw unknown();
      return Expr::square();
    }
    if (fn == "fg") {
      const auto g = parse_group(arg);
      if (!g) throw unknown();
      return Expr::fg(*g);
    }
    throw unknown();
  }

  std::string_view s_;
  long line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline InterpretationSet parse_spec(std::string_view text) {
  InterpretationSet out;
  std::set<std::string> names;
  long lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    Interpretation h = detail::SpecLineParser(line, lineno).parse();
    if (!names.insert(h.name).second)
      throw Error(Errc::kDuplicateName, "'" + h.name + "' defined twice", lineno, 1);
    out.push_back(std::move(h));
  }
  return out;
}

inline InterpretationSet load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

// -------------------------------------------------------------- evaluation

/// Per-graph structures shared by all predicates evaluated on that graph.
class GraphView {
 public:
  explicit GraphView(const Graph& g) : g_(g), adj_(adjacency(g)), kind_(graph_kind(g)) {}

  const Graph& graph() const { return g_; }
  const Adjacency& adj() const { return adj_; }
  GraphKind kind() const { return kind_; }

  const Atom& atom(int i) const { return std::get<Atom>(g_.nodes[static_cast<std::size_t>(i)]); }

  int hydrogens(int i) const {
    if (h_.empty()) {
      h_.resize(g_.nodes.size());
      for (std::size_t n = 0; n < g_.nodes.size(); ++n) h_[n] = smiles::implicit_hydrogens(g_, static_cast<int>(n));
    }
    return h_[static_cast<std::size_t>(i)];
  }

  const std::vector<std::vector<int>>& rings() const {
    if (!rings_) rings_ = smiles::rings(g_);
    return *rings_;
  }

  bool has_square() const {
    if (!square_) square_ = contains_cycle_of_length(g_, 4);
    return *square_;
  }

 private:
  const Graph& g_;
  Adjacency adj_;
  GraphKind kind_;
  mutable std::vector<int> h_;
  mutable std::optional<std::vector<std::vector<int>>> rings_;
  mutable std::optional<bool> square_;
};

namespace detail {

inline bool is_element(const GraphView& v, int i, std::string_view el) { return v.atom(i).element == el; }

inline std::size_t degree(const GraphView& v, int i) { return v.adj()[static_cast<std::size_t>(i)].size(); }

// O with one heavy neighbour, a carbon reached by a single bond, carrying H.
inline bool hydroxyl_oxygen(const GraphView& v, int o) {
  if (!is_element(v, o, "O") || degree(v, o) != 1) return false;
  const Neighbor& nb = v.adj()[static_cast<std::size_t>(o)][0];
  return nb.kind == BondKind::kSingle && is_element(v, nb.node, "C") && v.hydrogens(o) >= 1;
}

inline bool terminal_carbonyl_oxygen(const GraphView& v, const Neighbor& nb) {
  return nb.kind == BondKind::kDouble && is_element(v, nb.node, "O") && degree(v, nb.node) == 1;
}

inline bool group_present(const GraphView& v, Group group) {
  const int n = static_cast<int>(v.graph().nodes.size());
  switch (group) {
    case Group::kChlorine:
    case Group::kFluorine: {
      const std::string_view el = group == Group::kChlorine ? "Cl" : "F";
      for (int i = 0; i < n; ++i)
        if (is_element(v, i, el)) return true;
      return false;
    }
    case Group::kHydroxyl:
      for (int i = 0; i < n; ++i)
        if (hydroxyl_oxygen(v, i)) return true;
      return false;
    case Group::kKetone:
      for (int c = 0; c < n; ++c) {
        if (!is_element(v, c, "C") || degree(v, c) != 3) continue;
        const auto& nbs = v.adj()[static_cast<std::size_t>(c)];
        for (const Neighbor& o : nbs) {
          if (!terminal_carbonyl_oxygen(v, o)) continue;
          bool others_carbon = true;
          for (const Neighbor& other : nbs)
            if (other.node != o.node && !is_element(v, other.node, "C")) others_carbon = false;
          if (others_carbon) return true;
        }
      }
      return false;
    case Group::kCarboxyl:
      for (int c = 0; c < n; ++c) {
        if (!is_element(v, c, "C")) continue;
        bool carbonyl = false, acid = false;
        for (const Neighbor& nb : v.adj()[static_cast<std::size_t>(c)]) {
          if (terminal_carbonyl_oxygen(v, nb)) carbonyl = true;
          if (nb.kind == BondKind::kSingle && hydroxyl_oxygen(v, nb.node)) acid = true;
        }
        if (carbonyl && acid) return true;
      }
      return false;
    case Group::kPhenyl:
    case Group::kAromaticRing:
      for (const auto& ring : v.rings()) {
        if (group == Group::kPhenyl && ring.size() != 6) continue;
        bool ok = true;
        for (int i : ring) {
          const Atom& a = v.atom(i);
          if (!a.aromatic || (group == Group::kPhenyl && a.element != "C")) ok = false;
        }
        if (ok) return true;
      }
      return false;
  }
  return false;
}

inline bool eval(const Expr& e, const GraphView& v) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::kColor:
    case K::kHasColor: {
      if (v.kind() != GraphKind::kColor) throw Error(Errc::kKindMismatch, "color predicate on a molecular graph");
      std::size_t hits = 0;
      for (const auto& node : v.graph().nodes)
        if (std::get<Color>(node) == e.color) ++hits;
      return e.kind == K::kHasColor ? hits > 0 : 2 * hits > v.graph().nodes.size();
    }
    case K::kSquare: return v.has_square();
    case K::kGroup:
      if (v.kind() != GraphKind::kMolecular)
        throw Error(Errc::kKindMismatch, "functional-group predicate on a color graph");
      return group_present(v, e.group);
    case K::kAnd:
      for (const Expr& a : e.args)
        if (!eval(a, v)) return false;
      return true;
    case K::kOr:
      for (const Expr& a : e.args)
        if (eval(a, v)) return true;
      return false;
    case K::kNot: return !eval(e.args[0], v);
  }
  return false;
}

}  // namespace detail

inline bool eval(const Expr& e, const Graph& g) { return detail::eval(e, GraphView(g)); }
inline bool eval(const Interpretation& h, const Graph& g) { return eval(h.expr, g); }

/// Row-major graphs x interpretations bit matrix.
struct InterpretationMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bits;

  bool at(std::size_t r, std::size_t c) const { return bits[r * cols + c] != 0; }

  std::vector<int> column(std::size_t c) const {
    std::vector<int> out(rows);
    for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c) ? 1 : 0;
    return out;
  }

  ml::Matrix as_real() const {
    ml::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = at(r, c) ? 1.0 : 0.0;
    return m;
  }
};

/// Evaluates every interpretation on the graphs at `indices`; row r is
/// dataset graph indices[r], column c is hs[c].
inline InterpretationMatrix interpretation_matrix(const InterpretationSet& hs, const Dataset& ds,
                                                  std::span<const std::size_t> indices) {
  InterpretationMatrix m;
  m.rows = indices.size();
  m.cols = hs.size();
  m.bits.resize(m.rows * m.cols);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const GraphView view(ds.graphs.at(indices[r]));
    for (std::size_t c = 0; c < hs.size(); ++c) m.bits[r * m.cols + c] = detail::eval(hs[c].expr, view) ? 1 : 0;
  }
  return m;
}

inline std::vector<std::size_t> all_indices(const Dataset& ds) {
  std::vector<std::size_t> idx(ds.graphs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

inline InterpretationMatrix interpretation_matrix(const InterpretationSet& hs, const Dataset& ds) {
  const auto idx = all_indices(ds);
  return interpretation_matrix(hs, ds, idx);
}

/// True iff h1 implies h2 on every graph of the dataset.
inline bool empirical_subset(const Interpretation& h1, const Interpretation& h2, const Dataset& ds) {
  for (const Graph& g : ds.graphs) {
    const GraphView view(g);
    if (detail::eval(h1.expr, view) && !detail::eval(h2.expr, view)) return false;
  }
  return true;
}

struct GroupExample {
  std::string smiles;
  Group group;
  bool expected;
};

/// Curated molecules with reference substructure-match answers for every
/// functional group.
inline std::vector<GroupExample> functional_group_examples() {
  struct Row {
    const char* smiles;
    const char* bits;  // one char per group, in Group order
  };
  static constexpr Row kRows[] = {
      {"C", "0000000"},
      {"CC", "0000000"},
      {"CCO", "1000000"},
      {"CO", "1000000"},
      {"OCCO", "1000000"},
      {"CC(C)O", "1000000"},
      {"CC(=O)C", "0100000"},
      {"CC=O", "0000000"},
      {"CC(=O)O", "1000010"},
      {"OC(=O)CC(=O)O", "1000010"},
      {"CCC(=O)CC", "0100000"},
      {"O=C1CCCCC1", "0100000"},
      {"CC(=O)OC", "0000000"},
      {"CC(=O)N", "0000000"},
      {"c1ccccc1", "0010001"},
      {"Cc1ccccc1", "0010001"},
      {"Oc1ccccc1", "1010001"},
      {"OC(=O)c1ccccc1", "1010011"},
      {"CC(=O)c1ccccc1", "0110001"},
      {"O=C(c1ccccc1)c1ccccc1", "0110001"},
      {"c1ccncc1", "0000001"},
      {"c1ccoc1", "0000001"},
      {"c1ccsc1", "0000001"},
      {"c1cc[nH]c1", "0000001"},
      {"c1ccc2ccccc2c1", "0010001"},
      {"c1ccc2[nH]ccc2c1", "0010001"},
      {"C1CCCCC1", "0000000"},
      {"C1=CCCCC1", "0000000"},
      {"C1CC1", "0000000"},
      {"C1CCC1", "0000000"},
      {"ClCCl", "0001000"},
      {"ClC(Cl)(Cl)Cl", "0001000"},
      {"Clc1ccccc1", "0011001"},
      {"FC(F)(F)c1ccccc1", "0010101"},
      {"Fc1ccc(F)cc1", "0010101"},
      {"CCF", "0000100"},
      {"BrCCBr", "0000000"},
      {"ICC", "0000000"},
      {"CC(=O)Oc1ccccc1C(=O)O", "1010011"},
      {"Cn1cnc2c1c(=O)n(C)c(=O)n2C", "0000001"},
      {"CC(C)Cc1ccc(cc1)C(C)C(=O)O", "1010011"},
      {"CC(=O)Nc1ccc(O)cc1", "1010001"},
      {"CN1CCC[C@H]1c1cccnc1", "0000001"},
      {"OC[C@H]1OC(O)[C@H](O)[C@@H](O)[C@@H]1O", "1000000"},
      {"CN(C)CCCN1c2ccccc2CCc2ccc(Cl)cc21", "0011001"},
      {"Clc1ccc2c(c1)C(=NCC(=O)N2C)c1ccccc1", "0011001"},
      {"CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21", "0011001"},
      {"OC(=O)C(F)(F)F", "1000110"},
      {"CCN(CC)CC", "0000000"},
      {"C[N+](C)(C)C", "0000000"},
      {"[NH4+]", "0000000"},
      {"CC(=O)[O-]", "0000000"},
      {"[O-]C(=O)CC", "0000000"},
      {"NCC(=O)O", "1000010"},
      {"N[C@@H](Cc1ccccc1)C(=O)O", "1010011"},
      {"c1ccc2c(c1)oc1ccccc12", "0010001"},
      {"O=C1CC(=O)C1", "0100000"},
      {"CC(C)(C)c1ccc(O)cc1", "1010001"},
      {"O=C(O)CCc1ccccc1", "1010011"},
      {"FC(F)Oc1ccc(cc1)C(=O)C", "0110101"},
      {"c1ccc(cc1)-c1ccccc1", "0010001"},
      {"C1CCC2CCCCC2C1", "0000000"},
      {"c1ccc2cc3ccccc3cc2c1", "0010001"},
      {"OCC(O)CO", "1000000"},
      {"CS(=O)(=O)C", "0000000"},
      {"CSC", "0000000"},
      {"CP(=O)(O)O", "0000000"},
      {"B(O)(O)c1ccccc1", "0010001"},
      {"CC#N", "0000000"},
      {"C#C", "0000000"},
      {"C=C", "0000000"},
      {"Clc1ccc(cc1)C(c1ccc(Cl)cc1)C(Cl)(Cl)Cl", "0011001"},
      {"c1cscn1", "0000001"},
      {"c1cnc[nH]1", "0000001"},
      {"O=c1cc[nH]cc1", "0100001"},
      {"CC(=O)CC(=O)C", "0100000"},
      {"O=CC(=O)C", "0100000"},
      {"CCOC(=O)C(C)C", "0000000"},
      {"OC1CCCCC1", "1000000"},
      {"O=C(C1CC1)C1CC1", "0100000"},
      {"[2H]OC", "0000000"},
      {"C[C@@H](O)c1ccccc1", "1010001"},
      {"C/C=C/C(=O)C", "0100000"},
      {"c1ccc2ncccc2c1", "0010001"},
      {"OC(=O)c1ccccc1O", "1010011"},
      {"Cc1ccccc1.Cl", "0011001"},
      {"[Na+].[Cl-]", "0001000"},
      {"CC(C)N.Cl", "0001000"},
  };
  std::vector<GroupExample> out;
  for (const Row& r : kRows)
    for (std::size_t g = 0; g < kNumGroups; ++g) out.push_back({r.smiles, static_cast<Group>(g), r.bits[g] == '1'});
  return out;
}

}  // namespace gci::interp
