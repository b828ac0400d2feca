#include "frobex/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace frobex {

Permutation identity_permutation(std::size_t n) {
  Permutation p;
  p.one_line.resize(n);
  std::iota(p.one_line.begin(), p.one_line.end(), 1);
  return p;
}

Permutation compose(const Permutation& v, const Permutation& w) {
  if (v.degree() != w.degree()) throw Error("compose: permutation degree mismatch");
  Permutation r;
  r.one_line.resize(v.degree());
  for (std::size_t i = 1; i <= v.degree(); ++i) r.one_line[i - 1] = v(w(static_cast<int>(i)));
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r;
  r.one_line.resize(p.degree());
  for (std::size_t i = 1; i <= p.degree(); ++i) r.one_line[p(static_cast<int>(i)) - 1] = static_cast<int>(i);
  return r;
}

std::size_t length(const Permutation& p) {
  std::size_t inv = 0;
  const auto& w = p.one_line;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv;
}

Permutation longest_permutation(std::size_t n) {
  Permutation p;
  p.one_line.resize(n);
  for (std::size_t i = 1; i <= n; ++i) p.one_line[i - 1] = static_cast<int>(n + 1 - i);
  return p;
}

std::vector<int> lex_min_reduced_word(const Permutation& p) {
  // Greedily peel the smallest left descent; each step shortens by one, and
  // taking the minimal descent first is lexicographically optimal.
  std::vector<int> word;
  Permutation w = p;
  Permutation winv = inverse(w);
  while (true) {
    const std::size_t n = w.degree();
    int descent = 0;
    for (std::size_t i = 1; i + 1 <= n; ++i)
      if (winv(static_cast<int>(i)) > winv(static_cast<int>(i + 1))) {
        descent = static_cast<int>(i);
        break;
      }
    if (descent == 0) break;
    word.push_back(descent);
    // w <- s_descent w  swaps the values descent, descent+1
    for (auto& v : w.one_line) {
      if (v == descent) v = descent + 1;
      else if (v == descent + 1) v = descent;
    }
    winv = inverse(w);
  }
  return word;
}

SymmetricGroup symmetric_group(std::size_t n) {
  if (n < 1) throw Error("symmetric_group: n must be at least 1");
  SymmetricGroup sg;
  sg.n = n;
  std::vector<int> line(n);
  std::iota(line.begin(), line.end(), 1);
  do {
    sg.elements.push_back(Permutation{line});
  } while (std::next_permutation(line.begin(), line.end()));
  std::stable_sort(sg.elements.begin(), sg.elements.end(),
                   [](const Permutation& a, const Permutation& b) {
                     auto la = length(a), lb = length(b);
                     if (la != lb) return la < lb;
                     return a.one_line < b.one_line;
                   });
  return sg;
}

std::size_t SymmetricGroup::index_of(const Permutation& p) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return i;
  throw Error("symmetric_group: permutation not of this group");
}

std::size_t GroupTable::inverse(std::size_t i) const {
  for (std::size_t j = 0; j < size(); ++j)
    if (product(i, j) == identity) return j;
  throw Error("group '" + name + "': element without inverse");
}

std::size_t GroupTable::element_index(const std::string& label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (elements[i] == label) return i;
  throw Error("group '" + name + "': unknown element '" + label + "'");
}

GroupTable make_group_table(std::string name, std::vector<std::string> elements,
                            std::vector<std::size_t> products, std::size_t identity) {
  GroupTable g{std::move(name), std::move(elements), std::move(products), identity};
  const std::size_t n = g.size();
  if (g.products.size() != n * n) throw Error("group '" + g.name + "': incomplete table");
  for (auto v : g.products)
    if (v >= n) throw Error("group '" + g.name + "': table entry out of range");
  for (std::size_t i = 0; i < n; ++i)
    if (g.product(g.identity, i) != i || g.product(i, g.identity) != i)
      throw Error("group '" + g.name + "': identity law fails at " + g.elements[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g.product(g.product(i, j), k) != g.product(i, g.product(j, k)))
          throw Error("group '" + g.name + "': associativity fails at (" + g.elements[i] + "," +
                      g.elements[j] + "," + g.elements[k] + ")");
  for (std::size_t i = 0; i < n; ++i) g.inverse(i);  // existence check
  return g;
}

namespace {

GroupTable cyclic_group(std::size_t n, const std::string& name) {
  std::vector<std::string> elements;
  elements.push_back("e");
  for (std::size_t i = 1; i < n; ++i) elements.push_back(i == 1 ? "g" : "g" + std::to_string(i));
  std::vector<std::size_t> products(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) products[i * n + j] = (i + j) % n;
  return make_group_table(name, std::move(elements), std::move(products), 0);
}

GroupTable permutation_group(const std::string& name, const std::vector<std::string>& labels,
                             const std::vector<Permutation>& perms) {
  const std::size_t n = perms.size();
  std::vector<std::size_t> products(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Permutation p = compose(perms[i], perms[j]);
      std::size_t k = 0;
      while (k < n && !(perms[k] == p)) ++k;
      if (k == n) throw Error("group '" + name + "': not closed under composition");
      products[i * n + j] = k;
    }
  return make_group_table(name, labels, std::move(products), 0);
}

std::vector<Permutation> s3_perms() {
  return {Permutation{{1, 2, 3}}, Permutation{{2, 1, 3}}, Permutation{{3, 2, 1}},
          Permutation{{1, 3, 2}}, Permutation{{2, 3, 1}}, Permutation{{3, 1, 2}}};
}

const std::vector<std::string> s3_labels = {"e", "t12", "t13", "t23", "c123", "c132"};

}  // namespace

GroupTable builtin_group(const std::string& name) {
  if (name == "Z2") return cyclic_group(2, "Z2");
  if (name == "Z3") return cyclic_group(3, "Z3");
  if (name == "Z4") return cyclic_group(4, "Z4");
  if (name == "S3") return permutation_group("S3", s3_labels, s3_perms());
  if (name == "A3") {
    auto p = s3_perms();
    return permutation_group("A3", {"e", "c123", "c132"}, {p[0], p[4], p[5]});
  }
  throw Error("unknown builtin group '" + name + "' (available: Z2, Z3, Z4, S3, A3)");
}

std::vector<std::size_t> validate_subgroup(const GroupTable& g,
                                           std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  auto member = [&](std::size_t e) { return std::binary_search(idx.begin(), idx.end(), e); };
  if (!member(g.identity))
    throw Error("subgroup selection in " + g.name + " does not contain the identity");
  for (std::size_t i : idx)
    for (std::size_t j : idx) {
      std::size_t p = g.product(i, j);
      if (!member(p))
        throw Error("subgroup selection in " + g.name + " is not closed: witness " +
                    g.elements[i] + "*" + g.elements[j] + " = " + g.elements[p] +
                    " is outside the subset");
    }
  return idx;
}

std::vector<std::size_t> subgroup_of(const GroupTable& g, const std::string& selector) {
  if (selector == "trivial") return {g.identity};
  if (selector == g.name) {
    std::vector<std::size_t> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  if (!selector.empty() && selector.front() == '{' && selector.back() == '}') {
    std::vector<std::size_t> idx;
    std::string body = selector.substr(1, selector.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string label = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (label.empty()) throw Error("empty element label in subgroup list");
      idx.push_back(g.element_index(label));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return validate_subgroup(g, std::move(idx));
  }
  // named subgroups of the builtin groups
  if (g.name == "Z4" && selector == "Z2") return {0, 2};
  if (g.name == "S3" && (selector == "A3" || selector == "Z3"))
    return {0, g.element_index("c123"), g.element_index("c132")};
  if (g.name == "S3" && selector == "Z2") return {0, g.element_index("t12")};
  throw Error("unknown subgroup selector '" + selector + "' for group " + g.name);
}

AlgebraPtr rationals(std::size_t arity) {
  AlgebraSpec a;
  a.name = "Q";
  a.arity = arity;
  a.basis = {"one"};
  a.degrees = {zero_degree(arity)};
  a.unit = {Scalar(1)};
  a.products = {{{0, Scalar(1)}}};
  return make_algebra(std::move(a));
}

AlgebraPtr exterior_base(std::size_t m, std::size_t arity) {
  if (m == 0) return rationals(arity);
  AlgebraSpec a;
  a.name = "Ext" + std::to_string(m);
  a.arity = arity;
  const std::size_t dim = std::size_t(1) << m;
  for (std::size_t mask = 0; mask < dim; ++mask) {
    std::string label;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t(1) << i)) label += "th" + std::to_string(i + 1);
    if (label.empty()) label = "one";
    a.basis.push_back(label);
    a.degrees.push_back(Degree(std::vector<std::int64_t>(arity, 0),
                               parity_of(static_cast<long long>(__builtin_popcountll(mask)))));
  }
  a.unit.assign(dim, Scalar(0));
  a.unit[0] = 1;
  a.products.resize(dim * dim);
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = 0; t < dim; ++t) {
      if (s & t) continue;  // repeated generator kills the product
      // sign: generators of t must move left past the generators of s that
      // exceed them; count those transpositions
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(t & (std::size_t(1) << i))) continue;
        for (std::size_t j = i + 1; j < m; ++j)
          if (s & (std::size_t(1) << j)) ++inversions;
      }
      a.products[s * dim + t] = {{static_cast<std::uint32_t>(s | t),
                                  Scalar(inversions % 2 == 0 ? 1 : -1)}};
    }
  return make_algebra(std::move(a));
}

namespace {

std::string nilcoxeter_label(const Permutation& w) {
  auto word = lex_min_reduced_word(w);
  if (word.empty()) return "one";
  std::string s = "u";
  for (int i : word) s += std::to_string(i);
  return s;
}

long long binom2(long long n) { return n * (n - 1) / 2; }

}  // namespace

NilcoxeterData nilcoxeter(std::size_t n) {
  if (n < 1) throw Error("nilcoxeter: n must be at least 1");
  if (n > 6) throw Error("nilcoxeter: builtin limited to n <= 6 (basis grows as n!)");
  SymmetricGroup sg = symmetric_group(n);
  const std::size_t dim = sg.elements.size();

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[sg.elements[i].one_line] = i;

  AlgebraSpec a;
  a.name = "N" + std::to_string(n);
  a.arity = 1;
  std::vector<std::size_t> len(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    len[i] = length(sg.elements[i]);
    a.basis.push_back(nilcoxeter_label(sg.elements[i]));
    a.degrees.push_back(Degree(static_cast<std::int64_t>(len[i]),
                               parity_of(static_cast<long long>(len[i]))));
  }
  a.unit.assign(dim, Scalar(0));
  a.unit[index[identity_permutation(n).one_line]] = 1;
  a.products.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Permutation vw = compose(sg.elements[i], sg.elements[j]);
      if (length(vw) == len[i] + len[j])
        a.products[i * dim + j] = {{static_cast<std::uint32_t>(index[vw.one_line]), Scalar(1)}};
    }
  AlgebraPtr alg = make_algebra(std::move(a));

  AlgebraPtr base = rationals(1);
  Matrix tr(1, dim);
  tr.at(0, index[longest_permutation(n).one_line]) = 1;
  Matrix emb(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) emb.at(i, 0) = alg->unit[i];
  const long long l0 = binom2(static_cast<long long>(n));
  TraceData trace = untwisted_trace(base, alg, Embedding{base, alg, std::move(emb)}, std::move(tr),
                                    Degree(-l0, parity_of(l0)));

  NilcoxeterData out{alg, std::move(trace), identity_embedding(alg), alg};
  if (n > 1) {
    NilcoxeterData sub = nilcoxeter(n - 1);
    Matrix m(dim, sub.algebra->dim());
    for (std::size_t j = 0; j < sub.algebra->dim(); ++j) {
      auto t = alg->label_index(sub.algebra->basis[j]);
      if (!t) throw Error("nilcoxeter: sub-basis label not found in N" + std::to_string(n));
      m.at(*t, j) = 1;
    }
    out.sub = sub.algebra;
    out.sub_embedding = Embedding{sub.algebra, alg, std::move(m)};
  }
  return out;
}

GroupRingData group_ring(const GroupTable& g, const AlgebraPtr& base) {
  if (!check_supercommutative(*base).all_pass())
    throw Error("group_ring: base algebra '" + base->name + "' is not supercommutative");
  const std::size_t nb = base->dim(), ng = g.size();
  const std::size_t dim = nb * ng;
  auto idx = [&](std::size_t r, std::size_t h) { return r * ng + h; };

  AlgebraSpec a;
  a.name = base->name + "[" + g.name + "]";
  a.arity = base->arity;
  a.basis.resize(dim);
  a.degrees.resize(dim);
  for (std::size_t r = 0; r < nb; ++r)
    for (std::size_t h = 0; h < ng; ++h) {
      a.basis[idx(r, h)] =
          (r == 0) ? g.elements[h] : base->basis[r] + "." + g.elements[h];
      a.degrees[idx(r, h)] = base->degrees[r];
    }
  a.unit.assign(dim, Scalar(0));
  for (std::size_t r = 0; r < nb; ++r) a.unit[idx(r, g.identity)] = base->unit[r];
  a.products.resize(dim * dim);
  for (std::size_t r = 0; r < nb; ++r)
    for (std::size_t h = 0; h < ng; ++h)
      for (std::size_t r2 = 0; r2 < nb; ++r2)
        for (std::size_t h2 = 0; h2 < ng; ++h2) {
          // group elements are even, so no Koszul sign moving h past r2
          const std::size_t hh = g.product(h, h2);
          SparseVec prod;
          for (const auto& [l, c] : base->product(r, r2))
            prod.emplace_back(static_cast<std::uint32_t>(idx(l, hh)), c);
          std::sort(prod.begin(), prod.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
          a.products[idx(r, h) * dim + idx(r2, h2)] = std::move(prod);
        }
  AlgebraPtr alg = make_algebra(std::move(a));

  Matrix tr(nb, dim);
  for (std::size_t r = 0; r < nb; ++r) tr.at(r, idx(r, g.identity)) = 1;
  Matrix emb(dim, nb);
  for (std::size_t r = 0; r < nb; ++r) emb.at(idx(r, g.identity), r) = 1;
  TraceData trace = untwisted_trace(base, alg, Embedding{base, alg, std::move(emb)}, std::move(tr),
                                    zero_degree(base->arity));
  return {alg, std::move(trace)};
}

NestedProblem group_ring_tower(const GroupTable& g, const std::vector<std::size_t>& subgroup,
                               const AlgebraPtr& base, const std::string& h_name) {
  auto idx_sorted = validate_subgroup(g, subgroup);
  const std::size_t nh = idx_sorted.size();
  std::vector<std::string> h_elements;
  std::vector<std::size_t> h_products(nh * nh);
  for (std::size_t i = 0; i < nh; ++i) h_elements.push_back(g.elements[idx_sorted[i]]);
  std::size_t h_identity = 0;
  for (std::size_t i = 0; i < nh; ++i)
    if (idx_sorted[i] == g.identity) h_identity = i;
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t j = 0; j < nh; ++j) {
      std::size_t p = g.product(idx_sorted[i], idx_sorted[j]);
      std::size_t k = 0;
      while (idx_sorted[k] != p) ++k;
      h_products[i * nh + j] = k;
    }
  GroupTable h = make_group_table(h_name, std::move(h_elements), std::move(h_products), h_identity);

  GroupRingData B = group_ring(h, base);
  GroupRingData A = group_ring(g, base);
  const std::size_t nb = base->dim(), ng = g.size();

  Matrix mBA(nb * ng, nb * nh);
  for (std::size_t r = 0; r < nb; ++r)
    for (std::size_t i = 0; i < nh; ++i) mBA.at(r * ng + idx_sorted[i], r * nh + i) = 1;
  Embedding iota_BA{B.algebra, A.algebra, std::move(mBA)};

  Matrix mRB(nb * nh, nb);
  for (std::size_t r = 0; r < nb; ++r) mRB.at(r * nh + h_identity, r) = 1;
  Embedding iota_RB{base, B.algebra, std::move(mRB)};

  NestedProblem p;
  p.name = "groupring:" + g.name + ":" + h.name;
  p.tower = make_tower(base, B.algebra, A.algebra, std::move(iota_RB), std::move(iota_BA));
  p.tr_A = std::move(A.trace);
  p.tr_B = std::move(B.trace);
  for (std::size_t i = 0; i < nh; ++i) p.b_r_basis.push_back(basis_element(p.tower.B, i));
  return p;
}

NestedProblem nilcoxeter_tower(std::size_t n) {
  if (n < 2) throw Error("nilcoxeter tower needs n >= 2 (the tower is N_{n-1} in N_n)");
  NilcoxeterData ncB = nilcoxeter(n - 1);
  NilcoxeterData ncA = nilcoxeter(n);

  Matrix mBA(ncA.algebra->dim(), ncB.algebra->dim());
  for (std::size_t j = 0; j < ncB.algebra->dim(); ++j) {
    auto t = ncA.algebra->label_index(ncB.algebra->basis[j]);
    if (!t) throw Error("nilcoxeter tower: label mismatch between levels");
    mBA.at(*t, j) = 1;
  }
  AlgebraPtr R = ncB.trace.sub;  // the rationals
  Matrix mRB(ncB.algebra->dim(), 1);
  for (std::size_t i = 0; i < ncB.algebra->dim(); ++i) mRB.at(i, 0) = ncB.algebra->unit[i];

  NestedProblem p;
  p.name = "nilcoxeter:" + std::to_string(n);
  p.tower = make_tower(R, ncB.algebra, ncA.algebra, Embedding{R, ncB.algebra, std::move(mRB)},
                       Embedding{ncB.algebra, ncA.algebra, std::move(mBA)});
  // the A-trace built by nilcoxeter(n) embeds Q via its own base instance;
  // rebuild both traces against the shared tower R for pointer consistency
  p.tr_A = untwisted_trace(R, ncA.algebra, compose(p.tower.iota_BA, p.tower.iota_RB),
                           ncA.trace.matrix, ncA.trace.degree);
  p.tr_B = untwisted_trace(R, ncB.algebra, p.tower.iota_RB, ncB.trace.matrix, ncB.trace.degree);
  for (std::size_t i = 0; i < ncB.algebra->dim(); ++i)
    p.b_r_basis.push_back(basis_element(ncB.algebra, i));
  return p;
}

NestedProblem builtin_problem(const std::string& spec, const std::string& base_sel) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  // split on ':' but keep brace lists intact
  while (pos <= spec.size()) {
    std::size_t end = pos;
    int depth = 0;
    while (end < spec.size() && (spec[end] != ':' || depth > 0)) {
      if (spec[end] == '{') ++depth;
      if (spec[end] == '}') --depth;
      ++end;
    }
    parts.push_back(spec.substr(pos, end - pos));
    if (end == spec.size()) break;
    pos = end + 1;
  }
  AlgebraPtr base;
  if (base_sel == "q") {
    base = rationals(1);
  } else if (base_sel.rfind("ext:", 0) == 0) {
    std::size_t m = 0;
    try {
      m = std::stoul(base_sel.substr(4));
    } catch (...) {
      throw Error("bad base selector '" + base_sel + "'");
    }
    if (m > 12) throw Error("exterior base limited to m <= 12");
    base = exterior_base(m, 1);
  } else {
    throw Error("unknown base selector '" + base_sel + "' (expected q or ext:<m>)");
  }

  if (parts.size() == 2 && parts[0] == "nilcoxeter") {
    if (base->name != "Q")
      throw Error("the nilcoxeter builtin is defined over the rationals; use --base q");
    std::size_t n = 0;
    try {
      n = std::stoul(parts[1]);
    } catch (...) {
      throw Error("bad nilcoxeter size '" + parts[1] + "'");
    }
    return nilcoxeter_tower(n);
  }
  if (parts.size() == 3 && parts[0] == "groupring") {
    GroupTable g = builtin_group(parts[1]);
    auto sub = subgroup_of(g, parts[2]);
    std::string h_name = (!parts[2].empty() && parts[2].front() == '{') ? "H" : parts[2];
    if (h_name == g.name) h_name = g.name;  // full-group selection keeps the name
    NestedProblem p = group_ring_tower(g, sub, base, h_name);
    p.name = "groupring:" + parts[1] + ":" + parts[2];
    if (base->name != "Q") p.name += " over " + base->name;
    return p;
  }
  throw Error("unknown builtin '" + spec +
              "' (expected nilcoxeter:<n> or groupring:<group>:<subgroup>)");
}

}  // namespace frobex
