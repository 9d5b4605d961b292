#pragma once

// Wirtinger presentations of knot groups and their linear representations.
// A presentation stores one relation triple (i, j, k) per crossing meaning
// x_i x_j = x_k x_i: strand i runs under the overpass x_i carrying j to k.
// Braid closures are converted crossing by crossing and relabeled densely.

#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "poly_matrix.hpp"

namespace kalex {

struct WirtingerPresentation {
  std::size_t num_generators = 0;
  std::vector<std::array<std::size_t, 3>> relations;
  std::string name;

  bool operator==(const WirtingerPresentation&) const = default;

  void validate() const {
    if (num_generators == 0)
      throw error(errc::index_out_of_range, "a presentation needs at least one generator");
    for (std::size_t r = 0; r < relations.size(); ++r)
      for (std::size_t v : relations[r])
        if (v >= num_generators)
          throw error(errc::index_out_of_range,
                      "relation " + std::to_string(r) + " references generator " +
                          std::to_string(v) + " of " + std::to_string(num_generators));
  }
};

struct BraidWord {
  int strands = 0;
  std::vector<int> letters;  // +k is sigma_k, -k its inverse, 1 <= k < strands
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Closure of a braid word.  Tracks the arc label on every strand slot; each
// crossing retires two labels, mints one, and records the Wirtinger triple.
// The closure then glues final slots back to initial ones, and labels are
// renumbered densely in order of first appearance.
inline WirtingerPresentation from_braid(const BraidWord& b) {
  if (b.letters.empty()) throw error(errc::empty_word, "empty braid word");
  if (b.strands < 2)
    throw error(errc::index_out_of_range, "braid words need at least 2 strands");
  std::size_t s = static_cast<std::size_t>(b.strands);
  for (int l : b.letters) {
    int k = l < 0 ? -l : l;
    if (k < 1 || k >= b.strands)
      throw error(errc::index_out_of_range,
                  "braid letter " + std::to_string(l) + " outside 1.." + std::to_string(b.strands - 1));
  }

  std::vector<std::size_t> cur(s);
  std::iota(cur.begin(), cur.end(), 0);
  std::size_t next = s;
  std::vector<std::array<std::size_t, 3>> triples;
  for (int l : b.letters) {
    std::size_t i = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
    std::size_t u = cur[i], v = cur[i + 1], c = next++;
    if (l > 0) {
      triples.push_back({u, v, c});  // overpass u: x_u x_v = x_c x_u
      cur[i] = c;
      cur[i + 1] = u;
    } else {
      triples.push_back({v, c, u});  // overpass v: x_v x_c = x_u x_v
      cur[i] = v;
      cur[i + 1] = c;
    }
  }

  // the closure is a knot only when the strand permutation is one cycle
  std::vector<std::size_t> slot(s);
  std::iota(slot.begin(), slot.end(), 0);
  for (int l : b.letters) {
    std::size_t i = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
    std::swap(slot[i], slot[i + 1]);
  }
  std::vector<std::size_t> end_slot(s);
  for (std::size_t p = 0; p < s; ++p) end_slot[slot[p]] = p;
  std::vector<bool> visited(s, false);
  std::size_t cycles = 0;
  for (std::size_t p = 0; p < s; ++p) {
    if (visited[p]) continue;
    ++cycles;
    for (std::size_t q = p; !visited[q]; q = end_slot[q]) visited[q] = true;
  }
  if (cycles != 1)
    throw error(errc::not_a_knot,
                "braid closure has " + std::to_string(cycles) + " components; need a knot");

  detail::UnionFind uf(next);
  for (std::size_t p = 0; p < s; ++p) uf.unite(cur[p], p);

  std::vector<std::size_t> dense(next, next);
  std::size_t count = 0;
  for (std::size_t label = 0; label < next; ++label) {
    std::size_t root = uf.find(label);
    if (dense[root] == next) dense[root] = count++;
  }

  WirtingerPresentation p;
  p.num_generators = count;
  for (auto& t : triples)
    p.relations.push_back({dense[uf.find(t[0])], dense[uf.find(t[1])], dense[uf.find(t[2])]});
  p.validate();
  return p;
}

inline WirtingerPresentation builtin_knot(std::string_view name) {
  if (name == "unknot") {
    WirtingerPresentation p;
    p.num_generators = 1;
    p.name = "unknot";
    return p;
  }
  if (name == "trefoil") {
    WirtingerPresentation p = from_braid({2, {1, 1, 1}});
    p.name = "trefoil";
    return p;
  }
  if (name == "figure8") {
    WirtingerPresentation p = from_braid({3, {1, -2, 1, -2}});
    p.name = "figure8";
    return p;
  }
  throw error(errc::syntax_error,
              "unknown builtin knot \"" + std::string(name) + "\"; have unknot, trefoil, figure8");
}

namespace detail {

inline std::vector<std::vector<std::string>> tokenized_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    lines.push_back(std::move(toks));
  }
  return lines;
}

inline long long parse_int(const std::string& tok, std::size_t lineno) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size())
    throw error(errc::syntax_error,
                "expected an integer, got \"" + tok + "\" on line " + std::to_string(lineno));
  return v;
}

}  // namespace detail

// Text form:
//   knot NAME            (optional)
//   generators N         followed by rel i j k lines, or
//   braid S l1 l2 ...    a braid word closed into a knot
inline WirtingerPresentation parse_presentation(std::string_view text) {
  WirtingerPresentation p;
  bool saw_generators = false, saw_braid = false, saw_name = false;
  BraidWord braid;
  auto lines = detail::tokenized_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto& toks = lines[n];
    if (toks.empty()) continue;
    std::size_t lineno = n + 1;
    const std::string& kw = toks[0];
    if (kw == "knot") {
      if (saw_name)
        throw error(errc::duplicate_header, "duplicate knot line on line " + std::to_string(lineno));
      if (toks.size() != 2)
        throw error(errc::syntax_error, "knot takes one name on line " + std::to_string(lineno));
      p.name = toks[1];
      saw_name = true;
    } else if (kw == "generators") {
      if (saw_generators || saw_braid)
        throw error(errc::duplicate_header,
                    "duplicate generators/braid header on line " + std::to_string(lineno));
      if (toks.size() != 2)
        throw error(errc::syntax_error, "generators takes one count on line " + std::to_string(lineno));
      long long g = detail::parse_int(toks[1], lineno);
      if (g < 1)
        throw error(errc::index_out_of_range,
                    "generator count must be positive on line " + std::to_string(lineno));
      p.num_generators = static_cast<std::size_t>(g);
      saw_generators = true;
    } else if (kw == "rel") {
      if (!saw_generators)
        throw error(errc::syntax_error, "rel before generators on line " + std::to_string(lineno));
      if (toks.size() != 4)
        throw error(errc::syntax_error, "rel takes three indices on line " + std::to_string(lineno));
      std::array<std::size_t, 3> t;
      for (int q = 0; q < 3; ++q) {
        long long v = detail::parse_int(toks[q + 1], lineno);
        if (v < 0 || static_cast<std::size_t>(v) >= p.num_generators)
          throw error(errc::index_out_of_range, "generator index " + std::to_string(v) +
                                                    " out of range on line " + std::to_string(lineno));
        t[q] = static_cast<std::size_t>(v);
      }
      p.relations.push_back(t);
    } else if (kw == "braid") {
      if (saw_generators || saw_braid)
        throw error(errc::duplicate_header,
                    "duplicate generators/braid header on line " + std::to_string(lineno));
      if (toks.size() < 3)
        throw error(errc::syntax_error,
                    "braid takes a strand count and letters on line " + std::to_string(lineno));
      braid.strands = static_cast<int>(detail::parse_int(toks[1], lineno));
      for (std::size_t q = 2; q < toks.size(); ++q)
        braid.letters.push_back(static_cast<int>(detail::parse_int(toks[q], lineno)));
      saw_braid = true;
    } else {
      throw error(errc::syntax_error,
                  "unknown keyword \"" + kw + "\" on line " + std::to_string(lineno));
    }
  }
  if (saw_braid) {
    std::string name = p.name;
    p = from_braid(braid);
    p.name = name;
    return p;
  }
  if (!saw_generators) throw error(errc::syntax_error, "missing generators or braid line");
  p.validate();
  return p;
}

inline std::string render_presentation(const WirtingerPresentation& p) {
  std::string out;
  if (!p.name.empty()) out += "knot " + p.name + "\n";
  out += "generators " + std::to_string(p.num_generators) + "\n";
  for (const auto& t : p.relations)
    out += "rel " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
           std::to_string(t[2]) + "\n";
  return out;
}

// "S: l1 l2 ..." as accepted on the command line.
inline BraidWord parse_braid_literal(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw error(errc::syntax_error, "braid literal must look like \"strands: letters...\"");
  BraidWord b;
  b.strands = static_cast<int>(detail::parse_int(std::string(text.substr(0, colon)), 1));
  std::istringstream rest{std::string(text.substr(colon + 1))};
  std::string tok;
  while (rest >> tok) b.letters.push_back(static_cast<int>(detail::parse_int(tok, 1)));
  return b;
}

// A GL_N representation of the knot group, one image matrix per generator.
struct Representation {
  std::size_t dimension = 0;
  std::vector<ScalarMatrix> images;

  FieldContext context() const {
    return images.empty() ? FieldContext::rationals() : images[0].context();
  }
};

inline Representation scalar_representation(const WirtingerPresentation& p, const ExactScalar& c) {
  Representation rep;
  rep.dimension = 1;
  for (std::size_t k = 0; k < p.num_generators; ++k) {
    ScalarMatrix m(1, 1, c.context());
    m.at(0, 0) = c;
    rep.images.push_back(std::move(m));
  }
  return rep;
}

inline Representation trivial_representation(const WirtingerPresentation& p) {
  return scalar_representation(p, ExactScalar(Rational(1)));
}

// The verifier: image count, shapes, a uniform context, invertibility of
// every X_i, and every Wirtinger relation X_i X_j = X_k X_i checked exactly.
inline void validate_representation(const WirtingerPresentation& p, const Representation& rep) {
  if (rep.images.size() != p.num_generators)
    throw error(errc::size_mismatch, "representation has " + std::to_string(rep.images.size()) +
                                         " matrices for " + std::to_string(p.num_generators) +
                                         " generators");
  if (rep.dimension == 0) throw error(errc::size_mismatch, "representation dimension is zero");
  FieldContext ctx = rep.context();
  for (std::size_t k = 0; k < rep.images.size(); ++k) {
    const ScalarMatrix& m = rep.images[k];
    if (m.rows() != rep.dimension || m.cols() != rep.dimension)
      throw error(errc::size_mismatch, "image " + std::to_string(k) + " is not " +
                                           std::to_string(rep.dimension) + "x" +
                                           std::to_string(rep.dimension));
    if (m.context() != ctx)
      throw error(errc::context_mismatch, "image " + std::to_string(k) + " uses a different field");
    if (determinant(m).is_zero())
      throw error(errc::singular_matrix, "image " + std::to_string(k) + " is singular");
  }
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    auto [i, j, k] = p.relations[r];
    if (!(rep.images[i] * rep.images[j] == rep.images[k] * rep.images[i]))
      throw error(errc::relation_violated,
                  "relation " + std::to_string(r) + " (x" + std::to_string(i) + " x" +
                      std::to_string(j) + " = x" + std::to_string(k) + " x" + std::to_string(i) +
                      ") fails under the representation");
  }
}

// Representation file:
//   field gaussian | field ext <monic poly in x>     (optional, default Q)
//   dim N
//   matrix K                                          (then N rows of N entries)
inline Representation parse_representation(std::string_view text) {
  Representation rep;
  FieldContext ctx = FieldContext::rationals();
  bool saw_field = false, saw_dim = false;
  std::map<std::size_t, ScalarMatrix> images;

  auto lines = detail::tokenized_lines(text);
  std::size_t n = 0;
  auto fail = [&](const std::string& msg) -> error {
    return error(errc::syntax_error, msg + " on line " + std::to_string(n + 1));
  };
  while (n < lines.size()) {
    const auto& toks = lines[n];
    if (toks.empty()) {
      ++n;
      continue;
    }
    const std::string& kw = toks[0];
    if (kw == "field") {
      if (saw_field) throw error(errc::duplicate_header, "duplicate field line " + std::to_string(n + 1));
      if (saw_dim) throw fail("field must precede dim");
      if (toks.size() >= 2 && toks[1] == "gaussian" && toks.size() == 2) {
        ctx = FieldContext::gaussian();
      } else if (toks.size() >= 3 && toks[1] == "ext") {
        std::string expr;
        for (std::size_t q = 2; q < toks.size(); ++q) expr += toks[q];
        ctx = extension_context(expr);
      } else {
        throw fail("field takes gaussian or ext <poly>");
      }
      saw_field = true;
      ++n;
    } else if (kw == "dim") {
      if (saw_dim) throw error(errc::duplicate_header, "duplicate dim line " + std::to_string(n + 1));
      if (toks.size() != 2) throw fail("dim takes one count");
      long long d = detail::parse_int(toks[1], n + 1);
      if (d < 1) throw fail("dim must be positive");
      rep.dimension = static_cast<std::size_t>(d);
      saw_dim = true;
      ++n;
    } else if (kw == "matrix") {
      if (!saw_dim) throw fail("matrix before dim");
      if (toks.size() != 2) throw fail("matrix takes one generator index");
      long long raw = detail::parse_int(toks[1], n + 1);
      if (raw < 0) throw fail("matrix index must be nonnegative");
      std::size_t idx = static_cast<std::size_t>(raw);
      if (images.count(idx))
        throw error(errc::duplicate_header, "matrix " + std::to_string(idx) + " given twice");
      ScalarMatrix m(rep.dimension, rep.dimension, ctx);
      std::size_t row = 0;
      ++n;
      while (row < rep.dimension) {
        if (n >= lines.size()) throw fail("matrix " + std::to_string(idx) + " is truncated");
        const auto& data = lines[n];
        if (data.empty()) {
          ++n;
          continue;
        }
        if (data.size() != rep.dimension)
          throw fail("expected " + std::to_string(rep.dimension) + " entries, got " +
                     std::to_string(data.size()));
        for (std::size_t j = 0; j < rep.dimension; ++j) m.at(row, j) = parse_scalar(data[j], ctx);
        ++row;
        ++n;
      }
      images.emplace(idx, std::move(m));
    } else {
      throw fail("unknown keyword \"" + kw + "\"");
    }
  }
  if (!saw_dim) throw error(errc::syntax_error, "missing dim line");
  if (images.empty()) throw error(errc::syntax_error, "no matrix blocks");
  std::size_t count = images.rbegin()->first + 1;
  if (images.size() != count)
    throw error(errc::syntax_error, "matrix indices must cover 0.." + std::to_string(count - 1));
  for (auto& [idx, m] : images) rep.images.push_back(std::move(m));
  return rep;
}

}  // namespace kalex
