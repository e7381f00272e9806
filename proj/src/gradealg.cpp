#include "gradealg.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ceppa {

int Presentation::gen_id(const std::string& name) const {
  for (int i = 0; i < int(gens.size()); ++i)
    if (gens[i].name == name) return i;
  return -1;
}

int Presentation::mono_tail(const Monomial& m) const {
  return m.word.empty() ? m.vtx : gens[m.word.back()].tail;
}

int Presentation::mono_head(const Monomial& m) const {
  return m.word.empty() ? m.vtx : gens[m.word.front()].head;
}

int Presentation::mono_degree(const Monomial& m) const {
  int d = 2 * m.zpow;
  for (int g : m.word) d += gens[g].degree;
  return d;
}

std::tuple<int, int, int> Presentation::element_type(const Element& x) const {
  require(!x.empty(), errc::bad_argument, "empty element has no type");
  auto key = std::tuple(mono_degree(x[0].mono), mono_tail(x[0].mono), mono_head(x[0].mono));
  for (const auto& t : x) {
    auto k = std::tuple(mono_degree(t.mono), mono_tail(t.mono), mono_head(t.mono));
    if (k != key)
      fail(errc::incomposable_relation,
           "terms mix degrees or vertex types: " + el_str(*this, x));
  }
  return key;
}

void Presentation::validate() const {
  require(vertices >= 1, errc::bad_argument, "need at least one vertex");
  std::vector<std::string> names;
  for (const auto& g : gens) {
    require(!g.name.empty() && g.name != "z" && g.name.rfind("e_", 0) != 0,
            errc::bad_argument, "reserved or empty generator name '" + g.name + "'");
    for (char c : g.name)
      require(!isspace(static_cast<unsigned char>(c)) && c != '.' && c != '#' && c != '+',
              errc::bad_argument, "bad character in generator name '" + g.name + "'");
    require(g.tail >= 0 && g.tail < vertices && g.head >= 0 && g.head < vertices,
            errc::bad_argument, "generator '" + g.name + "' has an out-of-range vertex");
    require(g.degree >= 1, errc::bad_argument, "generator '" + g.name + "' needs degree >= 1");
    names.push_back(g.name);
  }
  std::sort(names.begin(), names.end());
  require(std::adjacent_find(names.begin(), names.end()) == names.end(), errc::bad_argument,
          "duplicate generator name");
  for (const auto& rel : relations) {
    element_type(rel);
    for (const auto& t : rel) {
      const Monomial& m = t.mono;
      require(m.zpow >= 0, errc::bad_argument, "negative z power");
      require(has_z || m.zpow == 0, errc::bad_argument,
              "relation uses z but the presentation has no central z");
      if (m.word.empty())
        require(m.vtx >= 0 && m.vtx < vertices, errc::bad_argument, "idempotent vertex out of range");
      for (int g : m.word)
        require(g >= 0 && g < int(gens.size()), errc::bad_argument, "generator id out of range");
      for (size_t i = 0; i + 1 < m.word.size(); ++i)
        require(gens[m.word[i]].tail == gens[m.word[i + 1]].head, errc::incomposable_relation,
                "word does not compose: " + el_str(*this, rel));
    }
  }
}

namespace {

bool term_mono_less(const Term& a, const Term& b) { return a.mono < b.mono; }

void el_norm(Element& x) {
  std::sort(x.begin(), x.end(), term_mono_less);
  Element out;
  for (auto& t : x) {
    if (t.coeff == 0) continue;
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  x = std::move(out);
}

}  // namespace

Element el_term(const Rat& c, Monomial m) {
  if (c == 0) return {};
  return {Term{c, std::move(m)}};
}

Element el_unit(const Presentation& p, int zpow) {
  Element x;
  for (int v = 0; v < p.vertices; ++v) x.push_back(Term{Rat(1), Monomial{zpow, {}, v}});
  return x;
}

void el_add_scaled(Element& dst, const Rat& c, const Element& src) {
  if (c == 0) return;
  for (const auto& t : src) dst.push_back(Term{c * t.coeff, t.mono});
  el_norm(dst);
}

Element el_scale(const Element& x, const Rat& c) {
  Element out;
  if (c == 0) return out;
  for (const auto& t : x) out.push_back(Term{c * t.coeff, t.mono});
  return out;
}

Element el_mul(const Presentation& p, const Element& x, const Element& y) {
  Element out;
  for (const auto& a : x)
    for (const auto& b : y) {
      if (p.mono_tail(a.mono) != p.mono_head(b.mono)) continue;
      Monomial m;
      m.zpow = a.mono.zpow + b.mono.zpow;
      m.word = a.mono.word;
      m.word.insert(m.word.end(), b.mono.word.begin(), b.mono.word.end());
      m.vtx = m.word.empty() ? a.mono.vtx : -1;
      out.push_back(Term{a.coeff * b.coeff, std::move(m)});
    }
  el_norm(out);
  return out;
}

Element el_commutator(const Presentation& p, const Element& x, const Element& y) {
  Element out = el_mul(p, x, y);
  el_add_scaled(out, Rat(-1), el_mul(p, y, x));
  return out;
}

bool el_is_homogeneous(const Presentation& p, const Element& x, int* degree) {
  if (x.empty()) {
    if (degree) *degree = -1;
    return true;
  }
  int d = p.mono_degree(x[0].mono);
  for (const auto& t : x)
    if (p.mono_degree(t.mono) != d) return false;
  if (degree) *degree = d;
  return true;
}

namespace {

std::string mono_str(const Presentation& p, const Monomial& m) {
  std::string s;
  if (m.zpow > 0) s = "z^" + std::to_string(m.zpow);
  if (m.word.empty()) {
    if (!s.empty()) s += ".";
    s += "e_" + std::to_string(m.vtx + 1);
  } else {
    for (int g : m.word) {
      if (!s.empty()) s += ".";
      s += p.gens[g].name;
    }
  }
  return s;
}

}  // namespace

std::string el_str(const Presentation& p, const Element& x) {
  if (x.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < x.size(); ++i) {
    Rat c = x[i].coeff;
    if (i == 0) {
      if (c < 0) s += "- ";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    Rat a = abs(c);
    if (a != 1) s += rat_str(a) + " ";
    s += mono_str(p, x[i].mono);
  }
  return s;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

bool looks_rational(const std::string& t) {
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(t[i])) && t[i] != '/') return false;
  return true;
}

Element parse_factor(const Presentation& p, const std::string& tok, int line_no) {
  if (tok == "z" || tok.rfind("z^", 0) == 0) {
    require(p.has_z, errc::parse_error,
            "line " + std::to_string(line_no) + ": z used without a 'central z' line");
    int k = 1;
    if (tok.size() > 2) {
      try {
        k = std::stoi(tok.substr(2));
      } catch (...) {
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad power '" + tok + "'");
      }
    }
    require(k >= 1, errc::parse_error, "line " + std::to_string(line_no) + ": bad power '" + tok + "'");
    return el_unit(p, k);
  }
  if (tok.rfind("e_", 0) == 0) {
    int v = 0;
    try {
      v = std::stoi(tok.substr(2));
    } catch (...) {
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad idempotent '" + tok + "'");
    }
    require(v >= 1 && v <= p.vertices, errc::parse_error,
            "line " + std::to_string(line_no) + ": vertex out of range in '" + tok + "'");
    return el_term(Rat(1), Monomial{0, {}, v - 1});
  }
  int g = p.gen_id(tok);
  require(g >= 0, errc::parse_error,
          "line " + std::to_string(line_no) + ": unknown generator '" + tok + "'");
  return el_term(Rat(1), Monomial{0, {g}, -1});
}

Element parse_term(const Presentation& p, const std::vector<std::string>& toks, size_t lo,
                   size_t hi, int line_no) {
  require(hi > lo, errc::parse_error, "line " + std::to_string(line_no) + ": empty term");
  Rat coeff(1);
  if (hi - lo >= 2) {
    require(looks_rational(toks[lo]), errc::parse_error,
            "line " + std::to_string(line_no) + ": expected a coefficient, got '" + toks[lo] + "'");
    coeff = parse_rat(toks[lo]);
    ++lo;
    require(hi - lo == 1, errc::parse_error,
            "line " + std::to_string(line_no) + ": a term is a coefficient and one monomial");
  }
  std::string mono = toks[lo];
  Element acc;
  size_t pos = 0;
  while (pos <= mono.size()) {
    size_t dot = mono.find('.', pos);
    if (dot == std::string::npos) dot = mono.size();
    require(dot > pos, errc::parse_error, "line " + std::to_string(line_no) + ": empty factor");
    Element f = parse_factor(p, mono.substr(pos, dot - pos), line_no);
    acc = acc.empty() && pos == 0 ? std::move(f) : el_mul(p, acc, f);
    require(!acc.empty(), errc::parse_error,
            "line " + std::to_string(line_no) + ": factors do not compose in '" + mono + "'");
    pos = dot + 1;
  }
  return el_scale(acc, coeff);
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  Presentation p;
  p.vertices = 0;
  p.has_z = false;
  std::vector<std::pair<std::vector<std::string>, int>> rel_lines;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "vertices") {
      require(toks.size() == 2, errc::parse_error,
              "line " + std::to_string(line_no) + ": vertices <count>");
      try {
        p.vertices = std::stoi(toks[1]);
      } catch (...) {
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad vertex count");
      }
    } else if (kw == "central") {
      require(toks.size() == 2 && toks[1] == "z", errc::parse_error,
              "line " + std::to_string(line_no) + ": only 'central z' is supported");
      p.has_z = true;
    } else if (kw == "gen") {
      require(toks.size() == 5, errc::parse_error,
              "line " + std::to_string(line_no) + ": gen <name> <tail> <head> <degree>");
      Generator g;
      g.name = toks[1];
      try {
        g.tail = std::stoi(toks[2]) - 1;
        g.head = std::stoi(toks[3]) - 1;
        g.degree = std::stoi(toks[4]);
      } catch (...) {
        fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad gen numbers");
      }
      p.gens.push_back(g);
    } else if (kw == "rel") {
      rel_lines.emplace_back(std::vector<std::string>(toks.begin() + 1, toks.end()), line_no);
    } else {
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": unknown directive '" + kw + "'");
    }
  }
  require(p.vertices >= 1, errc::parse_error, "missing or bad 'vertices' line");
  p.validate();  // names and vertex ranges, before relations reference them
  for (auto& [toks, ln] : rel_lines) {
    require(!toks.empty(), errc::parse_error, "line " + std::to_string(ln) + ": empty relation");
    Element rel;
    Rat sign(1);
    size_t i = 0;
    if (toks[0] == "+" || toks[0] == "-") {
      if (toks[0] == "-") sign = -1;
      i = 1;
    }
    while (i < toks.size()) {
      size_t j = i;
      while (j < toks.size() && toks[j] != "+" && toks[j] != "-") ++j;
      el_add_scaled(rel, sign, parse_term(p, toks, i, j, ln));
      if (j < toks.size()) sign = toks[j] == "-" ? -1 : 1;
      i = j + 1;
    }
    require(!rel.empty(), errc::parse_error,
            "line " + std::to_string(ln) + ": relation cancels to zero");
    p.relations.push_back(std::move(rel));
  }
  p.validate();
  return p;
}

Presentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), errc::parse_error, "cannot open '" + path + "'");
  return parse_presentation(in);
}

std::string print_presentation(const Presentation& p) {
  std::string s = "vertices " + std::to_string(p.vertices) + "\n";
  if (p.has_z) s += "central z\n";
  for (const auto& g : p.gens)
    s += "gen " + g.name + " " + std::to_string(g.tail + 1) + " " + std::to_string(g.head + 1) +
         " " + std::to_string(g.degree) + "\n";
  for (const auto& rel : p.relations) s += "rel " + el_str(p, rel) + "\n";
  return s;
}

Presentation preprojective_presentation(const RootSystem& rs, const std::vector<Rat>& mu,
                                        bool include_z, const std::vector<bool>& flip) {
  if (include_z) {
    require(int(mu.size()) == rs.rank, errc::bad_argument, "weight has the wrong length");
    require(is_regular(rs, mu), errc::irregular_weight, "weight pairs to zero against some root");
  }
  require(flip.empty() || flip.size() == rs.edges.size(), errc::bad_argument,
          "flip mask must match the edge count");
  Presentation p;
  p.vertices = rs.rank;
  p.has_z = include_z;
  for (size_t k = 0; k < rs.edges.size(); ++k) {
    auto [u, v] = rs.edges[k];
    bool fl = !flip.empty() && flip[k];
    std::string base = "a" + std::to_string(u + 1) + "_" + std::to_string(v + 1);
    p.gens.push_back(Generator{base, fl ? v : u, fl ? u : v, 1});
    p.gens.push_back(Generator{base + "*", fl ? u : v, fl ? v : u, 1});
  }
  for (int i = 0; i < rs.rank; ++i) {
    Element rel;
    for (size_t k = 0; k < rs.edges.size(); ++k) {
      int a = int(2 * k), as = a + 1;
      if (p.gens[a].head == i) el_add_scaled(rel, Rat(1), el_term(Rat(1), Monomial{0, {a, as}, -1}));
      if (p.gens[a].tail == i) el_add_scaled(rel, Rat(-1), el_term(Rat(1), Monomial{0, {as, a}, -1}));
    }
    if (include_z) el_add_scaled(rel, Rat(-mu[i]), el_term(Rat(1), Monomial{1, {}, i}));
    p.relations.push_back(std::move(rel));
  }
  p.validate();
  return p;
}

namespace {

// elementary symmetric polynomials of {1, ..., l}
std::vector<Int> elem_sym(int l) {
  std::vector<Int> e(l + 1, 0);
  e[0] = 1;
  for (int v = 1; v <= l; ++v)
    for (int k = std::min(v, l); k >= 1; --k) e[k] += v * e[k - 1];
  return e;
}

}  // namespace

Presentation b_presentation(const std::vector<int>& legs, bool eliminate) {
  require(legs.size() == 3, errc::bad_argument, "expected three leg lengths");
  for (int l : legs) require(l >= 1, errc::bad_argument, "leg lengths must be positive");
  Presentation p;
  p.vertices = 1;
  p.has_z = true;
  int ngens = eliminate ? 2 : 3;
  for (int i = 0; i < ngens; ++i)
    p.gens.push_back(Generator{"U" + std::to_string(i + 1), 0, 0, 2});
  if (!eliminate) {
    Element sum;
    for (int i = 0; i < 3; ++i) el_add_scaled(sum, Rat(1), el_term(Rat(1), Monomial{0, {i}, -1}));
    el_add_scaled(sum, Rat(-1), el_term(Rat(1), Monomial{1, {}, 0}));
    p.relations.push_back(std::move(sum));
  }
  for (int i = 0; i < ngens; ++i) {
    int l = legs[i];
    auto e = elem_sym(l);
    Element rel;
    for (int k = 0; k <= l; ++k)
      el_add_scaled(rel, Rat(e[k]),
                    el_term(Rat(1), Monomial{k, std::vector<int>(l + 1 - k, i), -1}));
    p.relations.push_back(std::move(rel));
  }
  if (eliminate) {
    // U_3 = z - U_1 - U_2: the product relation for the third leg becomes
    // sum_k (-1)^k e_k(1..l+1) z^k (U_1+U_2)^(l-k+1)
    int L = legs[2] + 1;
    auto e = elem_sym(L);
    Element rel;
    for (int k = 0; k <= L; ++k) {
      Rat c = Rat((k % 2) ? -e[k] : e[k]);
      int len = L - k;
      for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        std::vector<int> w(len);
        for (int b = 0; b < len; ++b) w[b] = (bits >> b) & 1;
        el_add_scaled(rel, c, el_term(Rat(1), Monomial{k, std::move(w), len ? -1 : 0}));
      }
    }
    p.relations.push_back(std::move(rel));
  }
  p.validate();
  return p;
}

namespace {

constexpr std::int64_t kCountCap = std::int64_t(1) << 60;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  return (a > kCountCap - b) ? kCountCap : a + b;
}

// word counts per (word degree, tail, head)
std::vector<std::vector<std::vector<std::int64_t>>> word_counts(const Presentation& p,
                                                                int max_degree) {
  int n = p.vertices;
  std::vector c(max_degree + 1, std::vector(n, std::vector<std::int64_t>(n, 0)));
  for (int v = 0; v < n; ++v) c[0][v][v] = 1;
  for (int wd = 1; wd <= max_degree; ++wd)
    for (const auto& g : p.gens) {
      if (g.degree > wd) continue;
      for (int t = 0; t < n; ++t) {
        std::int64_t& dst = c[wd][t][g.head];
        dst = sat_add(dst, c[wd - g.degree][t][g.tail]);
      }
    }
  return c;
}

}  // namespace

std::vector<std::int64_t> estimate_monomials(const Presentation& p, int max_degree) {
  auto c = word_counts(p, max_degree);
  std::vector<std::int64_t> est(max_degree + 1, 0);
  for (int d = 0; d <= max_degree; ++d)
    for (int k = 0; 2 * k <= d && (p.has_z || k == 0); ++k)
      for (int t = 0; t < p.vertices; ++t)
        for (int h = 0; h < p.vertices; ++h) est[d] = sat_add(est[d], c[d - 2 * k][t][h]);
  return est;
}

bool GradedAlgebra::word_less(const std::vector<int>& a, const std::vector<int>& b) const {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](int x, int y) { return name_rank_[x] < name_rank_[y]; });
}

GradedAlgebra::GradedAlgebra(Presentation pres, int max_degree, std::int64_t budget)
    : pres_(std::move(pres)), max_degree_(max_degree), budget_(budget) {
  require(max_degree_ >= 0, errc::bad_argument, "max degree must be nonnegative");
  require(budget_ >= 1, errc::bad_argument, "budget must be positive");
  pres_.validate();

  auto est = estimate_monomials(pres_, max_degree_);
  for (int d = 0; d <= max_degree_; ++d)
    if (est[d] > budget_)
      fail(errc::budget_exceeded, "degree " + std::to_string(d) + " needs " +
                                      std::to_string(est[d]) + " free monomials, budget " +
                                      std::to_string(budget_));

  name_rank_.resize(pres_.gens.size());
  {
    std::vector<int> order(pres_.gens.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pres_.gens[a].name < pres_.gens[b].name; });
    for (int r = 0; r < int(order.size()); ++r) name_rank_[order[r]] = r;
  }

  int n = pres_.vertices;
  words_.assign(max_degree_ + 1, {});
  words_[0].assign(n, std::vector<std::vector<std::vector<int>>>(n));
  for (int v = 0; v < n; ++v) words_[0][v][v].push_back({});
  std::vector<int> by_rank(pres_.gens.size());
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(),
            [&](int a, int b) { return name_rank_[a] < name_rank_[b]; });
  for (int wd = 1; wd <= max_degree_; ++wd) {
    words_[wd].assign(n, std::vector<std::vector<std::vector<int>>>(n));
    for (int h = 0; h < n; ++h)
      for (int g : by_rank) {
        if (pres_.gens[g].head != h || pres_.gens[g].degree > wd) continue;
        for (int t = 0; t < n; ++t)
          for (const auto& w : words_[wd - pres_.gens[g].degree][t][pres_.gens[g].tail]) {
            std::vector<int> nw;
            nw.reserve(w.size() + 1);
            nw.push_back(g);
            nw.insert(nw.end(), w.begin(), w.end());
            words_[wd][t][h].push_back(std::move(nw));
          }
      }
  }

  for (int d = 0; d <= max_degree_; ++d) build_degree(d);
}

void GradedAlgebra::build_degree(int d) {
  int n = pres_.vertices;

  // relation slices of this degree, keyed by block
  std::map<std::pair<int, int>, std::vector<const Element*>> rels_here;
  for (const auto& rel : pres_.relations) {
    auto [deg, t, h] = pres_.element_type(rel);
    if (deg == d) rels_here[{t, h}].push_back(&rel);
  }

  for (int t = 0; t < n; ++t)
    for (int h = 0; h < n; ++h) {
      Block blk;
      for (int k = 0; 2 * k <= d && (pres_.has_z || k == 0); ++k) {
        int wd = d - 2 * k;
        for (const auto& w : words_[wd][t][h])
          blk.monos.push_back(Monomial{k, w, w.empty() ? t : -1});
      }
      for (int i = 0; i < int(blk.monos.size()); ++i) blk.mono_index[blk.monos[i]] = i;

      auto remap = [&](const Block& src, auto&& f) {
        for (const auto& row : src.ideal.canonical_rows()) {
          SparseVec out;
          out.reserve(row.size());
          for (const auto& [idx, c] : row) {
            auto it = blk.mono_index.find(f(src.monos[idx]));
            require(it != blk.mono_index.end(), errc::internal, "mapped monomial not enumerated");
            out.emplace_back(it->second, c);
          }
          std::sort(out.begin(), out.end());
          blk.ideal.insert(std::move(out));
        }
      };

      if (auto it = rels_here.find({t, h}); it != rels_here.end())
        for (const Element* rel : it->second) {
          SparseVec row;
          for (const auto& term : *rel) row.emplace_back(blk.mono_index.at(term.mono), term.coeff);
          std::sort(row.begin(), row.end());
          blk.ideal.insert(std::move(row));
        }

      if (pres_.has_z && d >= 2)
        remap(blocks_.at({d - 2, t, h}), [](Monomial m) {
          ++m.zpow;
          return m;
        });

      for (int g = 0; g < int(pres_.gens.size()); ++g) {
        const Generator& gen = pres_.gens[g];
        if (gen.degree > d) continue;
        if (gen.head == h)
          remap(blocks_.at({d - gen.degree, t, gen.tail}), [&](Monomial m) {
            m.word.insert(m.word.begin(), g);
            m.vtx = -1;
            return m;
          });
        if (gen.tail == t)
          remap(blocks_.at({d - gen.degree, gen.head, h}), [&](Monomial m) {
            m.word.push_back(g);
            m.vtx = -1;
            return m;
          });
      }

      const auto& piv = blk.ideal.pivots();
      for (int i = 0; i < int(blk.monos.size()); ++i)
        if (!piv.count(i)) blk.basis.push_back(i);

      blocks_.emplace(std::tuple(d, t, h), std::move(blk));
    }
}

const GradedAlgebra::Block& GradedAlgebra::block(int degree, int tail, int head) const {
  require(degree >= 0 && degree <= max_degree_, errc::degree_overflow,
          "degree " + std::to_string(degree) + " outside the built range 0.." +
              std::to_string(max_degree_));
  require(tail >= 0 && tail < pres_.vertices && head >= 0 && head < pres_.vertices,
          errc::bad_argument, "vertex out of range");
  return blocks_.at({degree, tail, head});
}

int GradedAlgebra::block_dim(int degree, int tail, int head) const {
  return int(block(degree, tail, head).basis.size());
}

int GradedAlgebra::dim(int degree) const {
  int s = 0;
  for (int t = 0; t < pres_.vertices; ++t)
    for (int h = 0; h < pres_.vertices; ++h) s += block_dim(degree, t, h);
  return s;
}

std::vector<int> GradedAlgebra::dims() const {
  std::vector<int> out;
  for (int d = 0; d <= max_degree_; ++d) out.push_back(dim(d));
  return out;
}

Element GradedAlgebra::reduce(const Element& x) const {
  // group terms by block, reduce each group against its ideal slice
  std::map<std::tuple<int, int, int>, Element> groups;
  for (const auto& t : x) {
    int d = pres_.mono_degree(t.mono);
    require(d <= max_degree_, errc::degree_overflow,
            "element of degree " + std::to_string(d) + " outside the built range");
    groups[{d, pres_.mono_tail(t.mono), pres_.mono_head(t.mono)}].push_back(t);
  }
  Element out;
  for (auto& [key, part] : groups) {
    const Block& blk = blocks_.at(key);
    SparseVec v;
    for (const auto& t : part) v.emplace_back(blk.mono_index.at(t.mono), t.coeff);
    std::sort(v.begin(), v.end());
    // merge duplicates before reduction
    SparseVec merged;
    for (auto& [i, c] : v) {
      if (!merged.empty() && merged.back().first == i)
        merged.back().second += c;
      else
        merged.emplace_back(i, c);
    }
    std::erase_if(merged, [](auto& e) { return e.second == 0; });
    SparseVec red = blk.ideal.reduce(merged);
    for (const auto& [i, c] : red) out.push_back(Term{c, blk.monos[i]});
  }
  el_norm(out);
  return out;
}

std::vector<Monomial> GradedAlgebra::basis(int degree) const {
  std::vector<Monomial> out;
  for (int t = 0; t < pres_.vertices; ++t)
    for (int h = 0; h < pres_.vertices; ++h) {
      const Block& blk = block(degree, t, h);
      for (int i : blk.basis) out.push_back(blk.monos[i]);
    }
  return out;
}

SparseVec GradedAlgebra::coords(const Element& x, int degree) const {
  Element red = reduce(x);
  std::vector<std::pair<int, Rat>> entries;
  // per-degree block offsets in (tail, head) order
  std::map<std::pair<int, int>, int> offset;
  {
    int off = 0;
    for (int t = 0; t < pres_.vertices; ++t)
      for (int h = 0; h < pres_.vertices; ++h) {
        offset[{t, h}] = off;
        off += block_dim(degree, t, h);
      }
  }
  for (const auto& term : red) {
    require(pres_.mono_degree(term.mono) == degree, errc::bad_argument,
            "element is not homogeneous of the requested degree");
    int t = pres_.mono_tail(term.mono), h = pres_.mono_head(term.mono);
    const Block& blk = block(degree, t, h);
    int idx = blk.mono_index.at(term.mono);
    auto it = std::lower_bound(blk.basis.begin(), blk.basis.end(), idx);
    require(it != blk.basis.end() && *it == idx, errc::internal,
            "reduced element is not in the canonical basis");
    entries.emplace_back(offset[{t, h}] + int(it - blk.basis.begin()), term.coeff);
  }
  std::sort(entries.begin(), entries.end());
  return entries;
}

Element GradedAlgebra::from_coords(const SparseVec& v, int degree) const {
  std::vector<Monomial> b = basis(degree);
  Element out;
  for (const auto& [i, c] : v) {
    require(i >= 0 && i < int(b.size()), errc::bad_argument, "coordinate index out of range");
    out.push_back(Term{c, b[i]});
  }
  el_norm(out);
  return out;
}

Element GradedAlgebra::product(const Element& x, const Element& y) const {
  return reduce(el_mul(pres_, x, y));
}

PolyMatrix hilbert_matrix_predicted(const RootSystem& rs) {
  int h = rs.coxeter;
  int trunc = 2 * h - 2;
  PolyMatrix p = PolyMatrix::zero(rs.rank, 2);
  p.coeff[0] = QMatrix::identity(rs.rank);
  p.coeff[1] = adjacency_qmatrix(rs).scaled(Rat(-1));
  p.coeff[2] = QMatrix::identity(rs.rank);
  PolyMatrix inv = series_inverse(p, trunc);
  PolyMatrix out = PolyMatrix::zero(rs.rank, trunc);
  for (int d = 0; d <= trunc; ++d)
    for (int k = 0; 2 * k <= d && k < h; ++k) out.coeff[d] = out.coeff[d] + inv.at(d - 2 * k);
  for (int d = 0; d <= trunc; ++d)
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        const Rat& c = out.at(d).at(i, j);
        require(c.get_den() == 1 && c >= 0, errc::internal,
                "predicted dimension is not a nonnegative integer");
        require(d <= 2 * (h - 2) || c == 0, errc::internal,
                "predicted dimensions fail to vanish above the socle degree");
      }
  return out;
}

}  // namespace ceppa
