#include "weilcliff/lie.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace weilcliff {

namespace {

using nlohmann::json;

std::map<int, Rat> add_vec(const std::map<int, Rat>& a, const std::map<int, Rat>& b, const Rat& s) {
  std::map<int, Rat> out = a;
  for (const auto& [k, v] : b) {
    Rat q = s * v;
    auto it = out.find(k);
    if (it != out.end()) q += it->second;
    if (q == 0)
      out.erase(k);
    else
      out[k] = q;
  }
  return out;
}

}  // namespace

bool LieAlgebraData::is_cartan(int i) const {
  return std::find(cartan_indices.begin(), cartan_indices.end(), i) != cartan_indices.end();
}

std::map<int, Rat> LieAlgebraData::bracket_vec(const std::map<int, Rat>& x, int b) const {
  std::map<int, Rat> out;
  for (const auto& [a, c] : x) out = add_vec(out, brackets[a][b], c);
  return out;
}

LieAlgebraData load_lie_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed algebra document: ") + e.what());
  }

  LieAlgebraData L;
  try {
    L.name = doc.value("name", std::string("unnamed"));
    for (const auto& b : doc.at("basis")) L.basis_names.push_back(b.get<std::string>());
    L.dim = static_cast<int>(L.basis_names.size());
    if (L.dim == 0 || L.dim > 62) throw ParseError("basis size out of range");

    L.brackets.assign(L.dim, std::vector<std::map<int, Rat>>(L.dim));
    std::set<std::pair<int, int>> given;
    if (doc.contains("brackets")) {
      for (const auto& rec : doc.at("brackets")) {
        int a = rec.at("a").get<int>(), b = rec.at("b").get<int>();
        if (a < 0 || a >= L.dim || b < 0 || b >= L.dim) throw ParseError("bracket index out of range");
        std::map<int, Rat> out;
        for (const auto& t : rec.at("out")) {
          int c = t.at("c").get<int>();
          if (c < 0 || c >= L.dim) throw ParseError("bracket output index out of range");
          Rat q = parse_rat(t.at("coeff").get<std::string>());
          if (q != 0) out[c] = q;
        }
        L.brackets[a][b] = out;
        given.insert({a, b});
      }
    }
    // Fill antisymmetric counterparts; verify when both halves are present.
    for (int a = 0; a < L.dim; ++a)
      for (int b = 0; b < L.dim; ++b) {
        if (!given.count({a, b})) continue;
        auto neg = add_vec({}, L.brackets[a][b], Rat(-1));
        if (given.count({b, a})) {
          if (L.brackets[b][a] != neg)
            throw ValidationError("antisymmetry violated at pair (" + L.basis_names[a] + "," +
                                  L.basis_names[b] + ")");
        } else {
          L.brackets[b][a] = neg;
        }
      }
    for (int a = 0; a < L.dim; ++a)
      if (!L.brackets[a][a].empty())
        throw ValidationError("antisymmetry violated at pair (" + L.basis_names[a] + "," +
                              L.basis_names[a] + ")");

    const auto& fm = doc.at("form");
    if (fm.size() != static_cast<std::size_t>(L.dim)) throw ParseError("form has wrong shape");
    for (const auto& row : fm) {
      if (row.size() != static_cast<std::size_t>(L.dim)) throw ParseError("form has wrong shape");
      std::vector<Rat> r;
      for (const auto& e : row) r.push_back(parse_rat(e.get<std::string>()));
      L.form.push_back(std::move(r));
    }

    auto read_idx = [&](const char* key) {
      std::vector<int> v;
      if (doc.contains(key))
        for (const auto& e : doc.at(key)) {
          int i = e.get<int>();
          if (i < 0 || i >= L.dim) throw ParseError(std::string(key) + " index out of range");
          v.push_back(i);
        }
      return v;
    };
    L.cartan_indices = read_idx("cartan");
    L.npos_indices = read_idx("npos");
    L.nneg_indices = read_idx("nneg");
    L.center_indices = read_idx("center");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed algebra document: ") + e.what());
  }

  // --- structural validation ---
  auto B = [&](int a, int b) { return L.form[a][b]; };

  for (int a = 0; a < L.dim; ++a)
    for (int b = 0; b < L.dim; ++b)
      if (B(a, b) != B(b, a)) throw ValidationError("form not symmetric");

  // Jacobi on all triples: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0.
  for (int a = 0; a < L.dim; ++a)
    for (int b = a + 1; b < L.dim; ++b)
      for (int c = b + 1; c < L.dim; ++c) {
        std::map<int, Rat> acc = L.bracket_vec(L.brackets[a][b], c);
        acc = add_vec(acc, L.bracket_vec(L.brackets[b][c], a), Rat(1));
        acc = add_vec(acc, L.bracket_vec(L.brackets[c][a], b), Rat(1));
        if (!acc.empty())
          throw ValidationError("Jacobi identity violated at triple (" + L.basis_names[a] + "," +
                                L.basis_names[b] + "," + L.basis_names[c] + ")");
      }

  // Invariance: B([x,y],z) + B(y,[x,z]) = 0 on basis triples.
  for (int x = 0; x < L.dim; ++x)
    for (int y = 0; y < L.dim; ++y)
      for (int z = 0; z < L.dim; ++z) {
        Rat acc = 0;
        for (const auto& [c, v] : L.brackets[x][y]) acc += v * B(c, z);
        for (const auto& [c, v] : L.brackets[x][z]) acc += B(y, c) * v;
        if (acc != 0)
          throw ValidationError("form invariance violated at triple (" + L.basis_names[x] + "," +
                                L.basis_names[y] + "," + L.basis_names[z] + ")");
      }

  // Decomposition: disjoint cover; cartan abelian; cartan preserves npos/nneg spans.
  {
    std::set<int> seen;
    for (int i : L.cartan_indices) seen.insert(i);
    for (int i : L.npos_indices)
      if (!seen.insert(i).second) throw ValidationError("decomposition index sets overlap");
    for (int i : L.nneg_indices)
      if (!seen.insert(i).second) throw ValidationError("decomposition index sets overlap");
    for (int i : L.cartan_indices)
      if (std::find(L.npos_indices.begin(), L.npos_indices.end(), i) != L.npos_indices.end())
        throw ValidationError("decomposition index sets overlap");
    if (static_cast<int>(seen.size()) != L.dim)
      throw ValidationError("decomposition does not cover the basis");
    for (int i : L.center_indices)
      if (!L.is_cartan(i)) throw ValidationError("center indices must lie in the Cartan set");
  }
  for (int h : L.cartan_indices)
    for (int k : L.cartan_indices)
      if (!L.brackets[h][k].empty())
        throw ValidationError("Cartan subalgebra not abelian at pair (" + L.basis_names[h] + "," +
                              L.basis_names[k] + ")");
  auto in_span = [&](const std::map<int, Rat>& v, const std::vector<int>& idx) {
    for (const auto& [c, q] : v)
      if (std::find(idx.begin(), idx.end(), c) == idx.end()) return false;
    return true;
  };
  for (int h : L.cartan_indices) {
    for (int p : L.npos_indices)
      if (!in_span(L.brackets[h][p], L.npos_indices))
        throw ValidationError("[cartan, npos] leaves the npos span at pair (" + L.basis_names[h] +
                              "," + L.basis_names[p] + ")");
    for (int m : L.nneg_indices)
      if (!in_span(L.brackets[h][m], L.nneg_indices))
        throw ValidationError("[cartan, nneg] leaves the nneg span at pair (" + L.basis_names[h] +
                              "," + L.basis_names[m] + ")");
  }

  // Nondegeneracy via inversion; also caches the dual basis.
  std::vector<std::vector<Rat>> inv;
  try {
    inv = dense_inverse(L.form);
  } catch (const SingularForm&) {
    throw ValidationError("form is degenerate");
  }
  L.dual.resize(L.dim);
  for (int a = 0; a < L.dim; ++a)
    for (int b = 0; b < L.dim; ++b)
      if (inv[a][b] != 0) L.dual[a][b] = inv[a][b];

  for (int i : L.nneg_indices) L.pbw_order.push_back(i);
  for (int i : L.cartan_indices) L.pbw_order.push_back(i);
  for (int i : L.npos_indices) L.pbw_order.push_back(i);
  L.pbw_pos.assign(L.dim, -1);
  for (int p = 0; p < L.dim; ++p) L.pbw_pos[L.pbw_order[p]] = p;
  return L;
}

LieAlgebraData load_lie_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_lie_algebra(ss.str());
}

std::vector<std::vector<Rat>> dual_basis(const LieAlgebraData& L) {
  return dense_inverse(L.form);
}

CartanFunctional rho(const LieAlgebraData& L) {
  CartanFunctional r;
  for (int h : L.cartan_indices) {
    Rat half_sum = 0;
    for (int p : L.npos_indices) {
      const auto& v = L.brackets[h][p];
      for (const auto& [c, q] : v)
        if (c != p)
          throw NotDiagonal("ad(" + L.basis_names[h] + ") is not diagonal on " + L.basis_names[p]);
      auto it = v.find(p);
      if (it != v.end()) half_sum += it->second;
    }
    r.values[h] = half_sum / 2;
  }
  return r;
}

}  // namespace weilcliff
