#pragma once

// Derived groups of actions: normal forms for words over free and finite base
// groups, the operator action of a monoid S, and derived presentations of
// Wirtinger presentations together with their abelianized relation matrices.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <kalex/alexander.hpp>
#include <kalex/errors.hpp>
#include <kalex/exact_field.hpp>
#include <kalex/knot_presentation.hpp>
#include <kalex/poly_matrix.hpp>

namespace kalex {

// A base-group word.  Free base: reduced string of signed letters, where
// +(g+1) is generator g and -(g+1) its inverse.  Finite base: at most one
// letter +(e+1) naming the element e; the empty word is the identity.
using BaseWord = std::vector<long long>;

enum class BaseKind { free_group, finite_group };

// An action of a finitely generated group G on a finite set S, with optional
// monoid structure on S satisfying the operator axiom (st)g = s(tg).
class FiniteAction {
 public:
  static FiniteAction free_base(std::vector<std::string> generators, std::size_t sset,
                                std::vector<std::vector<std::size_t>> tables) {
    FiniteAction a;
    a.kind_ = BaseKind::free_group;
    a.names_ = std::move(generators);
    a.sset_ = sset;
    a.act_ = std::move(tables);
    if (a.sset_ == 0) throw error(errc::invalid_action, "the acted-on set must be nonempty");
    if (a.act_.size() != a.names_.size())
      throw error(errc::invalid_action, "one action table per generator is required");
    a.act_inv_.resize(a.act_.size());
    for (std::size_t g = 0; g < a.act_.size(); ++g) {
      a.check_permutation(a.act_[g], "generator " + a.names_[g]);
      a.act_inv_[g].resize(a.sset_);
      for (std::size_t s = 0; s < a.sset_; ++s) a.act_inv_[g][a.act_[g][s]] = s;
    }
    return a;
  }

  static FiniteAction finite_base(std::vector<std::vector<std::size_t>> mul, std::size_t sset,
                                  std::vector<std::vector<std::size_t>> tables) {
    FiniteAction a;
    a.kind_ = BaseKind::finite_group;
    a.base_mul_ = std::move(mul);
    a.sset_ = sset;
    a.act_ = std::move(tables);
    if (a.sset_ == 0) throw error(errc::invalid_action, "the acted-on set must be nonempty");
    std::size_t n = a.base_mul_.size();
    if (n == 0) throw error(errc::invalid_action, "the base group must be nonempty");
    for (const auto& row : a.base_mul_) {
      if (row.size() != n) throw error(errc::invalid_action, "base multiplication table not square");
      for (std::size_t v : row)
        if (v >= n) throw error(errc::invalid_action, "base multiplication entry out of range");
    }
    a.base_id_ = n;
    for (std::size_t e = 0; e < n; ++e) {
      bool id = true;
      for (std::size_t x = 0; x < n && id; ++x)
        id = a.base_mul_[e][x] == x && a.base_mul_[x][e] == x;
      if (id) {
        a.base_id_ = e;
        break;
      }
    }
    if (a.base_id_ == n) throw error(errc::invalid_action, "base group has no identity");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (a.base_mul_[a.base_mul_[x][y]][z] != a.base_mul_[x][a.base_mul_[y][z]])
            throw error(errc::invalid_action, "base multiplication is not associative");
    a.base_inv_.assign(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y)
        if (a.base_mul_[x][y] == a.base_id_ && a.base_mul_[y][x] == a.base_id_) a.base_inv_[x] = y;
      if (a.base_inv_[x] == n)
        throw error(errc::invalid_action, "base element " + std::to_string(x) + " has no inverse");
    }
    if (a.act_.size() != n)
      throw error(errc::invalid_action, "one action table per base element is required");
    for (std::size_t e = 0; e < n; ++e) a.check_permutation(a.act_[e], "element " + std::to_string(e));
    for (std::size_t s = 0; s < a.sset_; ++s) {
      if (a.act_[a.base_id_][s] != s)
        throw error(errc::invalid_action, "identity element must act trivially");
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (a.act_[a.base_mul_[x][y]][s] != a.act_[y][a.act_[x][s]])
            throw error(errc::invalid_action, "action is not multiplicative over the base group");
    }
    return a;
  }

  // Declares S a monoid.  Checks the identity laws and the operator axiom
  // (st)g = s(tg) on every generator; associativity of a table produced by an
  // honest monoid is the caller's business.
  FiniteAction& attach_monoid(std::size_t identity, std::vector<std::vector<std::size_t>> mul) {
    if (identity >= sset_) throw error(errc::invalid_action, "monoid identity out of range");
    if (mul.size() != sset_) throw error(errc::invalid_action, "monoid table must cover S");
    for (const auto& row : mul) {
      if (row.size() != sset_) throw error(errc::invalid_action, "monoid table must cover S");
      for (std::size_t v : row)
        if (v >= sset_) throw error(errc::invalid_action, "monoid table entry out of range");
    }
    for (std::size_t s = 0; s < sset_; ++s)
      if (mul[identity][s] != s || mul[s][identity] != s)
        throw error(errc::invalid_action, "monoid identity laws fail");
    for (std::size_t g = 0; g < act_.size(); ++g)
      for (std::size_t s = 0; s < sset_; ++s)
        for (std::size_t t = 0; t < sset_; ++t)
          if (act_[g][mul[s][t]] != mul[s][act_[g][t]])
            throw error(errc::invalid_action, "operator axiom (st)g = s(tg) fails");
    monoid_ = true;
    s_id_ = identity;
    s_mul_ = std::move(mul);
    return *this;
  }

  BaseKind base_kind() const { return kind_; }
  std::size_t sset_size() const { return sset_; }
  std::size_t num_generators() const { return act_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  bool has_monoid() const { return monoid_; }
  std::size_t monoid_identity() const {
    require_monoid();
    return s_id_;
  }
  std::size_t monoid_mul(std::size_t s, std::size_t t) const {
    require_monoid();
    check_s(s);
    check_s(t);
    return s_mul_[s][t];
  }

  // Reduces a word to its canonical spelling: free cancellation, or a fold
  // through the finite multiplication table.
  BaseWord reduce(const BaseWord& w) const {
    if (kind_ == BaseKind::free_group) {
      BaseWord out;
      for (long long letter : w) {
        check_letter(letter);
        if (!out.empty() && out.back() == -letter)
          out.pop_back();
        else
          out.push_back(letter);
      }
      return out;
    }
    std::size_t e = base_id_;
    for (long long letter : w) {
      check_letter(letter);
      std::size_t x = static_cast<std::size_t>((letter > 0 ? letter : -letter) - 1);
      if (letter < 0) x = base_inv_[x];
      e = base_mul_[e][x];
    }
    if (e == base_id_) return {};
    return {static_cast<long long>(e) + 1};
  }

  BaseWord mul(const BaseWord& x, const BaseWord& y) const {
    BaseWord w = x;
    w.insert(w.end(), y.begin(), y.end());
    return reduce(w);
  }

  BaseWord invert(const BaseWord& w) const {
    BaseWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return reduce(out);
  }

  // s . w, the action extended over words.
  std::size_t act(std::size_t s, const BaseWord& w) const {
    check_s(s);
    for (long long letter : w) {
      check_letter(letter);
      std::size_t g = static_cast<std::size_t>((letter > 0 ? letter : -letter) - 1);
      if (kind_ == BaseKind::free_group) {
        s = letter > 0 ? act_[g][s] : act_inv_[g][s];
      } else {
        s = letter > 0 ? act_[g][s] : act_[base_inv_[g]][s];
      }
    }
    return s;
  }

  std::size_t generator_index(std::string_view name) const {
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (names_[g] == name) return g;
    throw error(errc::unknown_generator, "unknown generator " + std::string(name));
  }

 private:
  FiniteAction() = default;

  void check_permutation(const std::vector<std::size_t>& table, const std::string& what) const {
    if (table.size() != sset_)
      throw error(errc::invalid_action, "action table for " + what + " must cover S");
    std::vector<bool> seen(sset_, false);
    for (std::size_t v : table) {
      if (v >= sset_ || seen[v])
        throw error(errc::invalid_action, "action of " + what + " is not a permutation of S");
      seen[v] = true;
    }
  }

  void check_s(std::size_t s) const {
    if (s >= sset_) throw error(errc::index_out_of_range, "S element out of range");
  }

  void check_letter(long long letter) const {
    long long mag = letter > 0 ? letter : -letter;
    if (mag < 1 || static_cast<std::size_t>(mag) > act_.size())
      throw error(errc::unknown_generator, "word letter outside the base group alphabet");
  }

  void require_monoid() const {
    if (!monoid_) throw error(errc::no_monoid_structure, "S carries no monoid structure");
  }

  BaseKind kind_ = BaseKind::free_group;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> base_mul_;
  std::vector<std::size_t> base_inv_;
  std::size_t base_id_ = 0;
  std::size_t sset_ = 0;
  std::vector<std::vector<std::size_t>> act_;
  std::vector<std::vector<std::size_t>> act_inv_;
  bool monoid_ = false;
  std::size_t s_id_ = 0;
  std::vector<std::vector<std::size_t>> s_mul_;
};

// One generator ^s g of a derived group.
struct DerivedLetter {
  std::size_t s = 0;
  BaseWord g;
};

inline bool operator==(const DerivedLetter& a, const DerivedLetter& b) {
  return a.s == b.s && a.g == b.g;
}

struct DerivedWord {
  std::vector<DerivedLetter> letters;
  bool normalized = false;
};

inline bool operator==(const DerivedWord& a, const DerivedWord& b) {
  return a.letters == b.letters;
}

// Unique normal form: every g nontrivial and no adjacent pair with
// s_{i+1} = s_i . g_i, obtained by merging ^s g ^{sg} h into ^s (gh).
inline DerivedWord normal_form(const DerivedWord& w, const FiniteAction& a) {
  DerivedWord out;
  out.normalized = true;
  for (const DerivedLetter& raw : w.letters) {
    DerivedLetter cur{raw.s, a.reduce(raw.g)};
    a.act(cur.s, cur.g);
    if (cur.g.empty()) continue;
    for (;;) {
      if (out.letters.empty()) {
        out.letters.push_back(cur);
        break;
      }
      DerivedLetter& top = out.letters.back();
      if (cur.s != a.act(top.s, top.g)) {
        out.letters.push_back(cur);
        break;
      }
      BaseWord merged = a.mul(top.g, cur.g);
      std::size_t s = top.s;
      out.letters.pop_back();
      if (merged.empty()) break;
      cur = DerivedLetter{s, std::move(merged)};
    }
  }
  return out;
}

// (^s g)^{-1} = ^{sg}(g^{-1}), applied to a reversed word, then normalized.
inline DerivedWord invert_word(const DerivedWord& w, const FiniteAction& a) {
  DerivedWord rev;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    rev.letters.push_back(DerivedLetter{a.act(it->s, it->g), a.invert(it->g)});
  return normal_form(rev, a);
}

// The operator action: s . (^{s_1}g_1 ... ^{s_k}g_k) = ^{ss_1}g_1 ... ^{ss_k}g_k.
inline DerivedWord s_act(std::size_t s, const DerivedWord& w, const FiniteAction& a) {
  DerivedWord shifted;
  for (const DerivedLetter& l : w.letters)
    shifted.letters.push_back(DerivedLetter{a.monoid_mul(s, l.s), l.g});
  return normal_form(shifted, a);
}

// The action of a knot group on the finite image of a representation:
// S = im(gamma) enumerated by breadth-first closure, acting by s . x_i = s X_i.
inline FiniteAction action_from_representation(const WirtingerPresentation& p,
                                               const Representation& gamma,
                                               std::size_t cap = 2048) {
  p.validate();
  validate_representation(p, gamma);
  std::size_t N = gamma.dimension;
  FieldContext ctx = gamma.context();

  struct MatLess {
    bool operator()(const ScalarMatrix& x, const ScalarMatrix& y) const {
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
          if (lex_less(x.at(i, j), y.at(i, j))) return true;
          if (lex_less(y.at(i, j), x.at(i, j))) return false;
        }
      return false;
    }
  };
  std::map<ScalarMatrix, std::size_t, MatLess> index;
  std::vector<ScalarMatrix> elems;
  auto intern = [&](const ScalarMatrix& m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    if (elems.size() >= cap)
      throw error(errc::image_not_finite, "representation image exceeds " + std::to_string(cap) +
                                              " elements; it is likely infinite");
    std::size_t id = elems.size();
    elems.push_back(m);
    index.emplace(m, id);
    return id;
  };

  intern(ScalarMatrix::identity(N, ctx));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const ScalarMatrix& x : gamma.images) {
      ScalarMatrix prod = elems[head] * x;
      intern(prod);
    }
  }

  std::size_t n = elems.size();
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> tables(p.num_generators);
  for (std::size_t g = 0; g < p.num_generators; ++g) {
    names.push_back("x" + std::to_string(g));
    tables[g].resize(n);
    for (std::size_t s = 0; s < n; ++s) tables[g][s] = index.at(elems[s] * gamma.images[g]);
  }
  FiniteAction a = FiniteAction::free_base(std::move(names), n, std::move(tables));

  std::vector<std::vector<std::size_t>> smul(n, std::vector<std::size_t>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) smul[s][t] = index.at(elems[s] * elems[t]);
  a.attach_monoid(0, std::move(smul));
  return a;
}

// The mod-m abelianization action: every generator shifts Z/m by one.
inline FiniteAction cyclic_epsilon_action(const WirtingerPresentation& p, std::size_t m) {
  p.validate();
  if (m == 0) throw error(errc::invalid_action, "the acted-on set must be nonempty");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> tables(p.num_generators);
  for (std::size_t g = 0; g < p.num_generators; ++g) {
    names.push_back("x" + std::to_string(g));
    tables[g].resize(m);
    for (std::size_t s = 0; s < m; ++s) tables[g][s] = (s + 1) % m;
  }
  FiniteAction a = FiniteAction::free_base(std::move(names), m, std::move(tables));
  std::vector<std::vector<std::size_t>> smul(m, std::vector<std::size_t>(m));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) smul[s][t] = (s + t) % m;
  a.attach_monoid(0, std::move(smul));
  return a;
}

// One derived relation ^s x_i ^{s.x_i} x_j = ^s x_k ^{s.x_k} x_i.
struct DerivedRelation {
  std::size_t s = 0;
  std::array<std::size_t, 3> triple{};
  DerivedWord lhs, rhs;
};

struct DerivedPresentation {
  std::size_t sset = 0;
  std::size_t base_generators = 0;
  std::size_t dropped_family = 0;
  std::vector<DerivedRelation> relations;
  std::size_t num_generators() const { return sset * base_generators; }
};

namespace detail {

inline void match_action(const WirtingerPresentation& p, const FiniteAction& a) {
  if (a.base_kind() != BaseKind::free_group || a.num_generators() != p.num_generators)
    throw error(errc::size_mismatch,
                "the action must cover exactly the presentation's generators");
}

}  // namespace detail

// Derived presentation over the action: each retained Wirtinger relation
// spawns one relation per S element; the last family is a consequence of the
// others and is omitted.
inline DerivedPresentation derived_presentation(const WirtingerPresentation& p,
                                                const FiniteAction& a) {
  p.validate();
  detail::match_action(p, a);
  DerivedPresentation out;
  out.sset = a.sset_size();
  out.base_generators = p.num_generators;
  out.dropped_family = detail::resolve_dropped(p, kDropLast);
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    if (r == out.dropped_family) continue;
    auto [i, j, k] = p.relations[r];
    BaseWord xi = {static_cast<long long>(i) + 1};
    BaseWord xj = {static_cast<long long>(j) + 1};
    BaseWord xk = {static_cast<long long>(k) + 1};
    for (std::size_t s = 0; s < out.sset; ++s) {
      DerivedRelation rel;
      rel.s = s;
      rel.triple = p.relations[r];
      rel.lhs.letters = {DerivedLetter{s, xi}, DerivedLetter{a.act(s, xi), xj}};
      rel.rhs.letters = {DerivedLetter{s, xk}, DerivedLetter{a.act(s, xk), xi}};
      out.relations.push_back(std::move(rel));
    }
  }
  return out;
}

inline DerivedPresentation derived_presentation(const WirtingerPresentation& p,
                                                const Representation& gamma,
                                                std::size_t cap = 2048) {
  return derived_presentation(p, action_from_representation(p, gamma, cap));
}

// Text form mirrors presentation files, with each rel line led by its S label.
inline std::string render_derived_presentation(const DerivedPresentation& dp) {
  std::string out;
  out += "sset " + std::to_string(dp.sset) + "\n";
  out += "generators " + std::to_string(dp.base_generators) + "\n";
  for (const DerivedRelation& rel : dp.relations)
    out += "rel " + std::to_string(rel.s) + " " + std::to_string(rel.triple[0]) + " " +
           std::to_string(rel.triple[1]) + " " + std::to_string(rel.triple[2]) + "\n";
  return out;
}

// Abelianization of the derived presentation as an integer matrix over Q:
// rows are retained relation families (family-major, S inner), one column
// per generator ^{s'} x_i at i*|S| + s'.  Every row sums to zero.
inline ScalarMatrix abelianized_derived_matrix(const WirtingerPresentation& p,
                                               const FiniteAction& a) {
  p.validate();
  detail::match_action(p, a);
  FieldContext ctx = FieldContext::rationals();
  std::size_t m = a.sset_size();
  std::size_t dropped = detail::resolve_dropped(p, kDropLast);
  std::size_t rows = (p.relations.empty() ? 0 : p.relations.size() - 1) * m;
  ScalarMatrix out(rows, p.num_generators * m, ctx);
  ExactScalar one = ExactScalar::one(ctx);

  std::size_t fam = 0;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    if (r == dropped && !p.relations.empty()) continue;
    auto [i, j, k] = p.relations[r];
    BaseWord xi = {static_cast<long long>(i) + 1};
    BaseWord xk = {static_cast<long long>(k) + 1};
    for (std::size_t s = 0; s < m; ++s) {
      std::size_t row = fam * m + s;
      out.at(row, i * m + s) += one;
      out.at(row, j * m + a.act(s, xi)) += one;
      out.at(row, k * m + s) -= one;
      out.at(row, i * m + a.act(s, xk)) -= one;
    }
    ++fam;
  }
  return out;
}

inline ScalarMatrix abelianized_derived_matrix(const WirtingerPresentation& p,
                                               const Representation& gamma,
                                               std::size_t cap = 2048) {
  return abelianized_derived_matrix(p, action_from_representation(p, gamma, cap));
}

// Word literals: one or more groups ^<s>(<letters>), each letter a one-char
// generator name optionally followed by ' for its inverse.
inline DerivedWord parse_derived_word(std::string_view text, const FiniteAction& a) {
  if (a.base_kind() != BaseKind::free_group)
    throw error(errc::invalid_action, "word literals require a free base group");
  detail::Cursor cur{text};
  DerivedWord out;
  cur.skip_ws();
  if (cur.eof()) throw error(errc::syntax_error, "empty derived word");
  if (cur.consume('1')) {
    if (!cur.eof()) cur.fail("trailing input after the identity word");
    return out;
  }
  while (!cur.eof()) {
    if (!cur.consume('^')) cur.fail("expected ^");
    Integer s = cur.integer();
    if (s >= Integer(a.sset_size())) cur.fail("S element out of range");
    if (!cur.consume('(')) cur.fail("expected (");
    DerivedLetter letter;
    letter.s = s.convert_to<std::size_t>();
    while (!cur.consume(')')) {
      if (cur.eof()) cur.fail("missing )");
      char c = cur.peek();
      ++cur.pos;
      std::size_t g = a.generator_index(std::string_view(&c, 1));
      long long signed_letter = static_cast<long long>(g) + 1;
      if (cur.consume('\'')) signed_letter = -signed_letter;
      letter.g.push_back(signed_letter);
    }
    out.letters.push_back(std::move(letter));
    cur.skip_ws();
  }
  return out;
}

inline std::string derived_word_str(const DerivedWord& w, const FiniteAction& a) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (const DerivedLetter& l : w.letters) {
    out += "^" + std::to_string(l.s) + "(";
    for (long long letter : l.g) {
      std::size_t g = static_cast<std::size_t>((letter > 0 ? letter : -letter) - 1);
      out += a.generator_names()[g];
      if (letter < 0) out += "'";
    }
    out += ")";
  }
  return out;
}

// Action files: 'free <names...>', 'sset <count>', one 'act <s> <gen> <s'>'
// line per pair, and optionally a monoid given by 'sid <e>' plus a complete
// set of 'smul <s> <t> <st>' lines.
inline FiniteAction parse_action(std::string_view text) {
  auto lines = detail::tokenized_lines(text);
  std::vector<std::string> names;
  bool saw_free = false, saw_sset = false;
  std::size_t sset = 0;
  std::vector<std::vector<long long>> act;
  bool saw_sid = false;
  std::size_t sid = 0;
  std::vector<std::vector<long long>> smul;

  auto fail = [](const std::string& msg, std::size_t line) -> error {
    return error(errc::syntax_error, msg + " on line " + std::to_string(line));
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto& toks = lines[n];
    if (toks.empty()) continue;
    std::size_t lineno = n + 1;
    const std::string& kw = toks[0];
    if (kw == "free") {
      if (saw_free)
        throw error(errc::duplicate_header, "duplicate free line on line " + std::to_string(lineno));
      if (toks.size() < 2) throw fail("free needs generator names", lineno);
      names.assign(toks.begin() + 1, toks.end());
      saw_free = true;
    } else if (kw == "sset") {
      if (saw_sset)
        throw error(errc::duplicate_header, "duplicate sset line on line " + std::to_string(lineno));
      if (!saw_free) throw fail("sset needs free first", lineno);
      if (toks.size() != 2) throw fail("sset takes one count", lineno);
      long long n = detail::parse_int(toks[1], lineno);
      if (n < 1) throw fail("sset must be positive", lineno);
      sset = static_cast<std::size_t>(n);
      act.assign(names.size(), std::vector<long long>(sset, -1));
      saw_sset = true;
    } else if (kw == "act") {
      if (!saw_free || !saw_sset) throw fail("act needs free and sset first", lineno);
      if (toks.size() != 4) throw fail("act takes s, generator, s'", lineno);
      long long s = detail::parse_int(toks[1], lineno);
      long long to = detail::parse_int(toks[3], lineno);
      std::size_t g = names.size();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == toks[2]) g = i;
      if (g == names.size()) throw error(errc::unknown_generator, "unknown generator " + toks[2]);
      if (s < 0 || static_cast<std::size_t>(s) >= sset || to < 0 ||
          static_cast<std::size_t>(to) >= sset)
        throw fail("S element out of range", lineno);
      if (act[g][static_cast<std::size_t>(s)] != -1) throw fail("duplicate act entry", lineno);
      act[g][static_cast<std::size_t>(s)] = to;
    } else if (kw == "sid") {
      if (!saw_sset) throw fail("sid needs sset first", lineno);
      if (saw_sid)
        throw error(errc::duplicate_header, "duplicate sid line on line " + std::to_string(lineno));
      if (toks.size() != 2) throw fail("sid takes one element", lineno);
      long long e = detail::parse_int(toks[1], lineno);
      if (e < 0 || static_cast<std::size_t>(e) >= sset) throw fail("S element out of range", lineno);
      sid = static_cast<std::size_t>(e);
      saw_sid = true;
      if (smul.empty()) smul.assign(sset, std::vector<long long>(sset, -1));
    } else if (kw == "smul") {
      if (!saw_sset) throw fail("smul needs sset first", lineno);
      if (toks.size() != 4) throw fail("smul takes s, t, st", lineno);
      if (smul.empty()) smul.assign(sset, std::vector<long long>(sset, -1));
      long long s = detail::parse_int(toks[1], lineno);
      long long t = detail::parse_int(toks[2], lineno);
      long long st = detail::parse_int(toks[3], lineno);
      if (s < 0 || static_cast<std::size_t>(s) >= sset || t < 0 ||
          static_cast<std::size_t>(t) >= sset || st < 0 || static_cast<std::size_t>(st) >= sset)
        throw fail("S element out of range", lineno);
      if (smul[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] != -1)
        throw fail("duplicate smul entry", lineno);
      smul[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = st;
    } else {
      throw fail("unknown keyword " + kw, lineno);
    }
  }
  if (!saw_free || !saw_sset) throw error(errc::syntax_error, "action needs free and sset lines");
  std::vector<std::vector<std::size_t>> tables(names.size());
  for (std::size_t g = 0; g < names.size(); ++g) {
    tables[g].resize(sset);
    for (std::size_t s = 0; s < sset; ++s) {
      if (act[g][s] < 0)
        throw error(errc::syntax_error,
                    "missing act entry for " + names[g] + " at " + std::to_string(s));
      tables[g][s] = static_cast<std::size_t>(act[g][s]);
    }
  }
  FiniteAction a = FiniteAction::free_base(std::move(names), sset, std::move(tables));
  if (!smul.empty()) {
    if (!saw_sid) throw error(errc::syntax_error, "smul lines need an sid line");
    std::vector<std::vector<std::size_t>> mul(sset, std::vector<std::size_t>(sset));
    for (std::size_t s = 0; s < sset; ++s)
      for (std::size_t t = 0; t < sset; ++t) {
        if (smul[s][t] < 0)
          throw error(errc::syntax_error, "missing smul entry for " + std::to_string(s) + "," +
                                              std::to_string(t));
        mul[s][t] = static_cast<std::size_t>(smul[s][t]);
      }
    a.attach_monoid(sid, std::move(mul));
  }
  return a;
}

}  // namespace kalex
