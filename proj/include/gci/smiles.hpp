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

// Minimal SMILES reader producing heavy-atom molecular graphs, the default
// valence hydrogen model, small-ring enumeration and BBBP CSV ingestion.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gci/common.hpp"
#include "gci/graph.hpp"

namespace gci::smiles {

namespace detail {

// Symbols accepted inside brackets.
inline constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
    "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
    "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
    "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
    "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

inline bool is_element(std::string_view s) {
  return std::find(kElements.begin(), kElements.end(), s) != kElements.end();
}

inline bool aromatic_capable(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O" ||
         element == "P" || element == "S";
}

inline double bond_order(BondKind k) {
  switch (k) {
    case BondKind::kSingle: return 1.0;
    case BondKind::kDouble: return 2.0;
    case BondKind::kTriple: return 3.0;
    case BondKind::kAromatic: return 1.5;
  }
  return 1.0;
}

struct RingOpen {
  int atom;
  std::optional<BondKind> bond;
  long offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Graph parse() {
    if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw Error(Errc::kEmptyInput, "empty SMILES", 0);
    // Leading/trailing whitespace is tolerated; interior whitespace is not.
    const auto first = text_.find_first_not_of(" \t\r\n");
    const auto last = text_.find_last_not_of(" \t\r\n");
    base_ = static_cast<long>(first);
    text_ = text_.substr(first, last - first + 1);

    while (pos_ < text_.size()) step();

    if (!branches_.empty())
      throw Error(Errc::kUnbalancedParenthesis, "unclosed '('", base_ + branches_.back().second);
    if (!rings_.empty()) {
      const auto& [digit, open] = *rings_.begin();
      throw Error(Errc::kUnmatchedRingClosure,
                  "ring bond " + std::to_string(digit) + " never closed", base_ + open.offset);
    }
    if (pending_bond_ || pending_dot_)
      throw Error(Errc::kUnknownElement, "SMILES ends with a dangling bond", base_ + static_cast<long>(pos_));
    if (graph_.nodes.empty()) throw Error(Errc::kEmptyInput, "no atoms", base_);
    fold_hydrogens();
    return std::move(graph_);
  }

  std::map<int, int> isotopes;  // atom index -> isotope, before H folding

 private:
  long at() const { return base_ + static_cast<long>(pos_); }

  void step() {
    const char c = text_[pos_];
    if (c == '(') {
      if (current_ < 0 || pending_bond_)
        throw Error(Errc::kUnbalancedParenthesis, "'(' must follow an atom", at());
      branches_.emplace_back(current_, static_cast<long>(pos_));
      ++pos_;
      return;
    }
    if (c == ')') {
      if (branches_.empty()) throw Error(Errc::kUnbalancedParenthesis, "unmatched ')'", at());
      if (pending_bond_) throw Error(Errc::kUnknownElement, "bond before ')'", at());
      current_ = branches_.back().first;
      branches_.pop_back();
      ++pos_;
      return;
    }
    if (c == '.') {
      if (current_ < 0 || pending_bond_) throw Error(Errc::kUnknownElement, "misplaced '.'", at());
      pending_dot_ = true;
      ++pos_;
      return;
    }
    if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\') {
      if (current_ < 0 || pending_bond_ || pending_dot_)
        throw Error(Errc::kUnknownElement, std::string("misplaced bond '") + c + "'", at());
      pending_bond_ = c == '=' ? BondKind::kDouble
                      : c == '#' ? BondKind::kTriple
                      : c == ':' ? BondKind::kAromatic
                                 : BondKind::kSingle;
      ++pos_;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
      ring_bond();
      return;
    }
    atom();
  }

  void ring_bond() {
    const long start = static_cast<long>(pos_);
    if (current_ < 0 || pending_dot_)
      throw Error(Errc::kUnmatchedRingClosure, "ring bond without a preceding atom", at());
    int digit;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
        throw Error(Errc::kUnmatchedRingClosure, "'%' must be followed by two digits", at());
      digit = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = text_[pos_] - '0';
      ++pos_;
    }
    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_[digit] = RingOpen{current_, pending_bond_, start};
      pending_bond_.reset();
      return;
    }
    const RingOpen open = it->second;
    rings_.erase(it);
    std::optional<BondKind> kind = pending_bond_ ? pending_bond_ : open.bond;
    pending_bond_.reset();
    if (open.atom == current_)
      throw Error(Errc::kUnmatchedRingClosure, "ring bond closes on its own atom", base_ + start);
    if (has_edge(open.atom, current_))
      throw Error(Errc::kUnmatchedRingClosure, "ring bond duplicates an existing bond", base_ + start);
    graph_.add_edge(open.atom, current_, kind ? *kind : default_bond(open.atom, current_));
  }

  void atom() {
    const long start = at();
    Atom a;
    const char c = text_[pos_];
    if (c == '[') {
      a = bracket_atom();
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      // Organic subset, two-letter symbols first.
      if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
        a.element = "Cl";
        pos_ += 2;
      } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
        a.element = "Br";
        pos_ += 2;
      } else if (std::string_view("BCNOPSFI").find(c) != std::string_view::npos) {
        a.element = std::string(1, c);
        ++pos_;
      } else {
        throw Error(Errc::kUnknownElement, std::string("'") + c + "' is not an organic-subset atom", start);
      }
    } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
      a.element = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      a.aromatic = true;
      ++pos_;
    } else {
      throw Error(Errc::kUnknownElement, std::string("unexpected character '") + c + "'", start);
    }
    add_atom(std::move(a));
  }

  Atom bracket_atom() {
    const long open = at();
    const auto close = text_.find(']', pos_);
    if (close == std::string_view::npos) throw Error(Errc::kBadBracketAtom, "missing ']'", open);
    const std::string_view body = text_.substr(pos_ + 1, close - pos_ - 1);
    const long body_at = open + 1;
    std::size_t i = 0;
    Atom a;
    auto bad = [&](const std::string& why) {
      return Error(Errc::kBadBracketAtom, why, body_at + static_cast<long>(i));
    };

    int isotope = 0;
    bool has_isotope = false;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      isotope = isotope * 10 + (body[i] - '0');
      has_isotope = true;
      ++i;
    }
    if (i >= body.size()) throw bad("missing element symbol");

    const char c0 = body[i];
    if (std::isupper(static_cast<unsigned char>(c0))) {
      std::string sym(1, c0);
      if (i + 1 < body.size() && std::islower(static_cast<unsigned char>(body[i + 1])) &&
          is_element(sym + body[i + 1])) {
        sym += body[i + 1];
      }
      if (!is_element(sym))
        throw Error(Errc::kUnknownElement, "unknown element '" + sym + "'", body_at + static_cast<long>(i));
      a.element = sym;
      i += sym.size();
    } else if (std::islower(static_cast<unsigned char>(c0))) {
      if (std::string_view("bcnops").find(c0) == std::string_view::npos)
        throw Error(Errc::kUnknownElement,
                    std::string("'") + c0 + "' is not an aromatic-capable element",
                    body_at + static_cast<long>(i));
      a.element = std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c0))));
      a.aromatic = true;
      ++i;
    } else {
      throw bad("expected an element symbol");
    }

    // Chirality is read and dropped.
    if (i < body.size() && body[i] == '@') {
      ++i;
      if (i < body.size() && body[i] == '@') {
        ++i;
      } else if (i + 1 < body.size() && std::isupper(static_cast<unsigned char>(body[i])) &&
                 std::isupper(static_cast<unsigned char>(body[i + 1]))) {
        i += 2;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
      }
    }

    int hcount = 0;
    if (i < body.size() && body[i] == 'H') {
      ++i;
      hcount = 1;
      if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        hcount = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
          hcount = hcount * 10 + (body[i] - '0');
          ++i;
        }
      }
    }
    a.explicit_h = hcount;

    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      const char sign = body[i];
      const int unit = sign == '+' ? 1 : -1;
      ++i;
      if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        int mag = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
          mag = mag * 10 + (body[i] - '0');
          ++i;
        }
        a.charge = unit * mag;
      } else {
        a.charge = unit;
        while (i < body.size() && body[i] == sign) {
          a.charge += unit;
          ++i;
        }
      }
    }

    if (i < body.size() && body[i] == ':') {
      ++i;
      if (i >= body.size() || !std::isdigit(static_cast<unsigned char>(body[i])))
        throw bad("atom class needs digits");
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    }
    if (i != body.size()) throw bad("unexpected text in bracket atom");

    pos_ = close + 1;
    if (has_isotope) {
      if (isotope == 0) throw Error(Errc::kBadBracketAtom, "isotope must be positive", open + 1);
      isotopes[static_cast<int>(graph_.nodes.size())] = isotope;
    }
    return a;
  }

  void add_atom(Atom a) {
    const int idx = static_cast<int>(graph_.nodes.size());
    graph_.nodes.emplace_back(std::move(a));
    if (current_ >= 0 && !pending_dot_) {
      graph_.add_edge(current_, idx, pending_bond_ ? *pending_bond_ : default_bond(current_, idx));
    }
    pending_bond_.reset();
    pending_dot_ = false;
    current_ = idx;
  }

  bool aromatic(int i) const {
    return std::get<Atom>(graph_.nodes[static_cast<std::size_t>(i)]).aromatic;
  }

  BondKind default_bond(int a, int b) const {
    return aromatic(a) && aromatic(b) ? BondKind::kAromatic : BondKind::kSingle;
  }

  bool has_edge(int a, int b) const {
    const int u = std::min(a, b), v = std::max(a, b);
    return std::any_of(graph_.edges.begin(), graph_.edges.end(),
                       [&](const Edge& e) { return e.u == u && e.v == v; });
  }

  // Plain [H] atoms bonded to one heavy atom become hydrogen counts on that
  // atom. Isotopic hydrogens ([2H]) and H-only fragments stay as nodes.
  void fold_hydrogens();

  std::string_view text_;
  long base_ = 0;
  std::size_t pos_ = 0;
  Graph graph_;
  int current_ = -1;
  std::optional<BondKind> pending_bond_;
  bool pending_dot_ = false;
  std::vector<std::pair<int, long>> branches_;
  std::map<int, RingOpen> rings_;
};

}  // namespace detail

/// Hydrogen count of an atom: the bracket count when written, otherwise the
/// smallest default valence that covers the bond-order sum, minus that sum.
/// Aromatic bonds count 1.5 and the sum is rounded up; aromatic atoms only
/// use their lowest valence.
inline int implicit_hydrogens(const Graph& g, int node) {
  if (node < 0 || static_cast<std::size_t>(node) >= g.nodes.size())
    throw Error(Errc::kNotAnAtom, "node index out of range");
  const Atom* a = std::get_if<Atom>(&g.nodes[static_cast<std::size_t>(node)]);
  if (!a) throw Error(Errc::kNotAnAtom, "node " + std::to_string(node) + " is a color node");
  if (a->explicit_h) return *a->explicit_h;

  std::vector<int> valences;
  const std::string& el = a->element;
  if (el == "B") valences = {3};
  else if (el == "C") valences = {4};
  else if (el == "N") valences = {3, 5};
  else if (el == "O") valences = {2};
  else if (el == "P") valences = {3, 5};
  else if (el == "S") valences = {2, 4, 6};
  else if (el == "F" || el == "Cl" || el == "Br" || el == "I") valences = {1};
  else return 0;

  // Formal charge shifts the target for the pnictogens and chalcogens:
  // N+ behaves like C (4), O- like a halogen (1).
  if (a->charge != 0 && (el == "N" || el == "P" || el == "O" || el == "S")) {
    for (int& v : valences) v += a->charge;
  } else if (a->charge != 0 && el == "C") {
    for (int& v : valences) v -= std::abs(a->charge);
  }

  double sum = 0.0;
  for (const Edge& e : g.edges) {
    if (e.u == node || e.v == node) sum += detail::bond_order(e.kind);
  }
  const int need = static_cast<int>(std::ceil(sum - 1e-9));
  if (a->aromatic) valences.resize(1);
  for (int v : valences) {
    if (v >= need) return std::max(0, v - need);
  }
  return 0;
}

inline void detail::Parser::fold_hydrogens() {
  std::vector<int> degree(graph_.nodes.size(), 0);
  for (const Edge& e : graph_.edges) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  std::vector<char> drop(graph_.nodes.size(), 0);
  std::vector<int> extra_h(graph_.nodes.size(), 0);
  for (const Edge& e : graph_.edges) {
    for (auto [h, heavy] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const Atom& ha = std::get<Atom>(graph_.nodes[static_cast<std::size_t>(h)]);
      const Atom& hv = std::get<Atom>(graph_.nodes[static_cast<std::size_t>(heavy)]);
      if (ha.element == "H" && ha.charge == 0 && ha.explicit_h.value_or(0) == 0 &&
          !isotopes.count(h) && degree[static_cast<std::size_t>(h)] == 1 &&
          e.kind == BondKind::kSingle && hv.element != "H") {
        drop[static_cast<std::size_t>(h)] = 1;
        ++extra_h[static_cast<std::size_t>(heavy)];
      }
    }
  }
  if (std::none_of(drop.begin(), drop.end(), [](char d) { return d != 0; })) return;

  // Organic-subset atoms keep their default-valence count: computed with the
  // H bonds still present, then one per folded H is added back.
  std::vector<int> h_total(graph_.nodes.size(), 0);
  for (std::size_t i = 0; i < graph_.nodes.size(); ++i) {
    if (extra_h[i] == 0) continue;
    const Atom& a = std::get<Atom>(graph_.nodes[i]);
    h_total[i] = (a.explicit_h ? *a.explicit_h : implicit_hydrogens(graph_, static_cast<int>(i))) + extra_h[i];
  }
  std::vector<int> remap(graph_.nodes.size(), -1);
  Graph out;
  out.label = graph_.label;
  for (std::size_t i = 0; i < graph_.nodes.size(); ++i) {
    if (drop[i]) continue;
    remap[i] = static_cast<int>(out.nodes.size());
    Atom a = std::get<Atom>(graph_.nodes[i]);
    if (extra_h[i] > 0) a.explicit_h = h_total[i];
    out.nodes.emplace_back(std::move(a));
  }
  for (const Edge& e : graph_.edges) {
    if (drop[static_cast<std::size_t>(e.u)] || drop[static_cast<std::size_t>(e.v)]) continue;
    out.add_edge(remap[static_cast<std::size_t>(e.u)], remap[static_cast<std::size_t>(e.v)], e.kind);
  }
  std::map<int, int> iso;
  for (auto [idx, value] : isotopes) iso[remap[static_cast<std::size_t>(idx)]] = value;
  isotopes = std::move(iso);
  graph_ = std::move(out);
}

/// Parses a SMILES string into a molecular graph. Isotopes, when present,
/// are recorded in meta["isotopes"] as "atom:mass" pairs.
inline Graph parse_smiles(std::string_view text) {
  detail::Parser p(text);
  Graph g = p.parse();
  if (!p.isotopes.empty()) {
    std::string s;
    for (auto [idx, value] : p.isotopes) {
      if (!s.empty()) s += ',';
      s += std::to_string(idx) + ":" + std::to_string(value);
    }
    g.meta["isotopes"] = s;
  }
  return g;
}

inline constexpr std::size_t kMaxRingSize = 7;

/// All simple cycles of length 3..7, each once, starting at the smallest node.
inline std::vector<std::vector<int>> rings(const Graph& g) {
  std::vector<std::vector<int>> out;
  for_each_simple_cycle(adjacency(g), 3, kMaxRingSize, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct SkippedRow {
  std::size_t row;  // zero-based data row (header excluded)
  std::string reason;
};

struct ParseDiagnostics {
  std::size_t total_rows = 0;
  std::size_t parsed = 0;
  std::vector<SkippedRow> skipped;
};

/// Splits one CSV record; handles double-quoted fields with embedded commas
/// and doubled quotes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

inline std::pair<Dataset, ParseDiagnostics> ingest_bbbp(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::kMissingColumn, "empty CSV");
  const auto header = split_csv_line(line);
  auto column = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string h = header[i];
      h.erase(0, h.find_first_not_of(" \xef\xbb\xbf"));
      h.erase(h.find_last_not_of(' ') + 1);
      if (h == name) return i;
    }
    throw Error(Errc::kMissingColumn, "CSV header lacks column '" + std::string(name) + "'");
  };
  const std::size_t c_num = column("num");
  const std::size_t c_name = column("name");
  const std::size_t c_label = column("p_np");
  const std::size_t c_smiles = column("smiles");
  const std::size_t width = std::max({c_num, c_name, c_label, c_smiles}) + 1;

  Dataset ds;
  ds.task_name = "bbbp";
  ds.num_classes = 2;
  ds.metric_kind = MetricKind::kAuroc;
  ParseDiagnostics diag;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    const std::size_t this_row = row++;
    ++diag.total_rows;
    const auto fields = split_csv_line(line);
    if (fields.size() < width) {
      diag.skipped.push_back({this_row, "too few fields"});
      continue;
    }
    const std::string& smi = fields[c_smiles];
    const std::string& lab = fields[c_label];
    if (lab != "0" && lab != "1") {
      diag.skipped.push_back({this_row, "label '" + lab + "' is not 0/1"});
      continue;
    }
    if (smi.find_first_not_of(' ') == std::string::npos) {
      diag.skipped.push_back({this_row, "empty SMILES"});
      continue;
    }
    try {
      Graph g = parse_smiles(smi);
      g.label = lab == "1" ? 1 : 0;
      g.meta["name"] = fields[c_name];
      g.meta["num"] = fields[c_num];
      g.meta["smiles"] = smi;
      g.meta["row"] = std::to_string(this_row);
      ds.graphs.push_back(std::move(g));
      ++diag.parsed;
    } catch (const Error& e) {
      diag.skipped.push_back({this_row, e.what()});
    }
  }
  return {std::move(ds), std::move(diag)};
}

inline std::pair<Dataset, ParseDiagnostics> ingest_bbbp(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, "cannot open " + csv_path);
  return ingest_bbbp(in);
}

}  // namespace gci::smiles
