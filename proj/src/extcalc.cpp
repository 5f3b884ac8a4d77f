#include "lcl/extcalc.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcl::extcalc {

namespace {

using Complex = std::complex<double>;

// Insert m into a strictly increasing index list; returns (sign, list) or
// sign 0 when m already present.
std::pair<int, std::vector<int>> insert_index(const std::vector<int>& I,
                                              int m) {
  std::vector<int> J;
  J.reserve(I.size() + 1);
  int sign = 1;
  bool placed = false;
  for (int idx : I) {
    if (idx == m) return {0, {}};
    if (!placed && idx > m) {
      J.push_back(m);
      placed = true;
    }
    if (!placed) sign = -sign;
    J.push_back(idx);
  }
  if (!placed) J.push_back(m);
  return {sign, J};
}

// Merge two strictly increasing lists; sign = parity of sorting the
// concatenation, or 0 on a repeated index.
std::pair<int, std::vector<int>> merge_indices(const std::vector<int>& A,
                                               const std::vector<int>& B) {
  std::vector<int> J = A;
  J.insert(J.end(), B.begin(), B.end());
  long inversions = 0;
  for (size_t i = 0; i < J.size(); ++i)
    for (size_t j = i + 1; j < J.size(); ++j) {
      if (J[i] == J[j]) return {0, {}};
      if (J[i] > J[j]) ++inversions;
    }
  std::sort(J.begin(), J.end());
  return {inversions % 2 == 0 ? 1 : -1, J};
}

Coeff sum_terms(std::vector<std::pair<Complex, Coeff>> parts) {
  return [parts = std::move(parts)](const HD2Vec& x) {
    CHD2 acc{HD2(0.0), HD2(0.0)};
    for (const auto& [c, f] : parts) acc = acc + CHD2(c) * f(x);
    return acc;
  };
}

void check_same_patch(const FormField& a, const FormField& b) {
  if (a.dim != b.dim)
    throw std::invalid_argument("forms live on different patches");
}

}  // namespace

Patch make_patch(std::vector<std::string> names,
                 std::vector<std::array<double, 2>> box) {
  Patch P;
  P.dim = static_cast<int>(names.size());
  if (box.size() != names.size())
    throw std::invalid_argument("make_patch: names/box size mismatch");
  for (auto& b : box)
    if (b[0] >= b[1]) throw std::invalid_argument("make_patch: empty box");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("make_patch: duplicate coordinate name");
  P.names = std::move(names);
  P.box = std::move(box);
  return P;
}

Coeff partial(const Coeff& f, int m) {
  return [f, m](const HD2Vec& x) -> CHD2 {
    bool slot1_free = true, slot2_free = true;
    for (const auto& c : x) {
      if (c.d1 != 0.0) slot1_free = false;
      if (c.d2 != 0.0) slot2_free = false;
    }
    if (m < 0 || m >= static_cast<int>(x.size()))
      throw std::out_of_range("partial: direction out of range");
    HD2Vec y = x;
    if (slot1_free) {
      y[m].d1 = 1.0;
      CHD2 r = f(y);
      return {HD2(r.re.d1, 0.0, r.re.d12, 0.0),
              HD2(r.im.d1, 0.0, r.im.d12, 0.0)};
    }
    if (slot2_free) {
      y[m].d2 = 1.0;
      CHD2 r = f(y);
      return {HD2(r.re.d2, r.re.d12, 0.0, 0.0),
              HD2(r.im.d2, r.im.d12, 0.0, 0.0)};
    }
    throw std::domain_error(
        "partial: both hyperdual slots already carry seeds (third "
        "derivative requested)");
  };
}

FormField zero_form(int dim, int degree) {
  if (degree < 0 || degree > dim)
    throw std::invalid_argument("zero_form: bad degree");
  FormField F;
  F.dim = dim;
  F.degree = degree;
  return F;
}

FormField fn_form(int dim, Coeff f) {
  FormField F = zero_form(dim, 0);
  F.terms[{}] = std::move(f);
  return F;
}

FormField dx(int dim, int i) {
  if (i < 0 || i >= dim) throw std::out_of_range("dx: index out of range");
  FormField F = zero_form(dim, 1);
  F.terms[{i}] = [](const HD2Vec&) { return CHD2(1.0); };
  return F;
}


FormField scale(Complex c, const FormField& a) {
  FormField F = zero_form(a.dim, a.degree);
  for (const auto& [I, f] : a.terms) F.terms[I] = sum_terms({{c, f}});
  return F;
}

FormField add(const FormField& a, const FormField& b) {
  check_same_patch(a, b);
  if (a.degree != b.degree)
    throw std::invalid_argument("add: mixed degrees");
  FormField F = zero_form(a.dim, a.degree);
  for (const auto& [I, f] : a.terms) F.terms[I] = f;
  for (const auto& [I, g] : b.terms) {
    auto it = F.terms.find(I);
    if (it == F.terms.end())
      F.terms[I] = g;
    else
      it->second = sum_terms({{1.0, it->second}, {1.0, g}});
  }
  return F;
}

FormField sub(const FormField& a, const FormField& b) {
  return add(a, scale(-1.0, b));
}

FormField conj(const FormField& a) {
  FormField F = zero_form(a.dim, a.degree);
  for (const auto& [I, f] : a.terms)
    F.terms[I] = [f](const HD2Vec& x) { return lcl::conj(f(x)); };
  return F;
}

FormField mul(const Coeff& f, const FormField& a) {
  FormField F = zero_form(a.dim, a.degree);
  for (const auto& [I, g] : a.terms)
    F.terms[I] = [f, g](const HD2Vec& x) { return f(x) * g(x); };
  return F;
}

FormField wedge(const FormField& a, const FormField& b) {
  check_same_patch(a, b);
  if (a.degree + b.degree > a.dim)
    throw std::invalid_argument("wedge: degree overflow");
  FormField F = zero_form(a.dim, a.degree + b.degree);
  std::map<std::vector<int>, std::vector<std::pair<Complex, Coeff>>> acc;
  for (const auto& [I, f] : a.terms)
    for (const auto& [J, g] : b.terms) {
      auto [sign, K] = merge_indices(I, J);
      if (sign == 0) continue;
      Coeff prod = [f, g](const HD2Vec& x) { return f(x) * g(x); };
      acc[K].push_back({Complex(sign, 0.0), prod});
    }
  for (auto& [K, parts] : acc) F.terms[K] = sum_terms(std::move(parts));
  return F;
}

FormField d(const FormField& a) {
  if (a.degree >= a.dim)
    return zero_form(a.dim, a.degree);  // top-degree derivative vanishes
  FormField F = zero_form(a.dim, a.degree + 1);
  std::map<std::vector<int>, std::vector<std::pair<Complex, Coeff>>> acc;
  for (const auto& [I, f] : a.terms)
    for (int m = 0; m < a.dim; ++m) {
      auto [sign, J] = insert_index(I, m);
      if (sign == 0) continue;
      acc[J].push_back({Complex(sign, 0.0), partial(f, m)});
    }
  for (auto& [J, parts] : acc) F.terms[J] = sum_terms(std::move(parts));
  return F;
}

FormField pullback(const FormField& a, const MapFn& phi, int dim_src) {
  FormField F = zero_form(dim_src, a.degree);
  if (a.degree > dim_src)
    throw std::invalid_argument("pullback: degree exceeds source dimension");
  int k = a.degree;
  // Enumerate strictly increasing source multi-indices J.
  std::vector<std::vector<int>> Js;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      Js.push_back(cur);
      return;
    }
    for (int i = start; i < dim_src; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  for (const auto& J : Js) {
    // (phi^* a)_J = sum_I (f_I o phi) det[ d phi_{I_r} / d x_{J_c} ]
    auto terms = a.terms;  // copy of the map (closures shared)
    Coeff cf = [terms, phi, J, k](const HD2Vec& x) -> CHD2 {
      HD2Vec y = phi(x);
      CHD2 acc{HD2(0.0), HD2(0.0)};
      for (const auto& [I, f] : terms) {
        CHD2 base = f(y);
        // Leibniz determinant over permutations of 0..k-1
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        CHD2 det{HD2(0.0), HD2(0.0)};
        do {
          int sgn = 1;
          for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
              if (perm[i] > perm[j]) sgn = -sgn;
          CHD2 prod = CHD2(Complex(sgn, 0.0));
          for (int r = 0; r < k; ++r) {
            int target = I[r];
            Coeff comp = [phi, target](const HD2Vec& z) {
              return CHD2{phi(z)[target], HD2(0.0)};
            };
            prod = prod * partial(comp, J[perm[r]])(x);
          }
          det = det + prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc = acc + base * det;
      }
      return acc;
    };
    F.terms[J] = cf;
  }
  return F;
}

std::complex<double> evaluate(const FormField& a, const Eigen::VectorXd& x,
                              const std::vector<Eigen::VectorXcd>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree)
    throw std::invalid_argument("evaluate: wrong number of vectors");
  std::vector<double> xs(x.data(), x.data() + x.size());
  HD2Vec xp = lift_point(xs);
  int k = a.degree;
  Complex out = 0.0;
  for (const auto& [I, f] : a.terms) {
    Complex coeff = f(xp).value();
    // det of the k x k matrix vectors[c][I[r]]
    if (k == 0) {
      out += coeff;
      continue;
    }
    Eigen::MatrixXcd Mm(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) Mm(r, c) = vectors[c](I[r]);
    out += coeff * Mm.determinant();
  }
  return out;
}

Eigen::MatrixXcd expand_2form(const FormField& F,
                              const std::vector<FormField>& coframe,
                              const Eigen::VectorXd& x, double cond_limit) {
  int dim = F.dim;
  if (F.degree != 2) throw std::invalid_argument("expand_2form: degree != 2");
  if (static_cast<int>(coframe.size()) != dim)
    throw std::invalid_argument("expand_2form: coframe size != dim");
  std::vector<double> xs(x.data(), x.data() + x.size());
  HD2Vec xp = lift_point(xs);
  Eigen::MatrixXcd Theta = Eigen::MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (coframe[a].degree != 1)
      throw std::invalid_argument("expand_2form: coframe member not degree 1");
    for (const auto& [I, f] : coframe[a].terms)
      Theta(a, I[0]) = f(xp).value();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Theta, Eigen::ComputeThinU |
                                                    Eigen::ComputeThinV);
  double cond = svd.singularValues()(0) /
                svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < cond_limit))
    throw std::runtime_error("expand_2form: ill-conditioned coframe");
  // dual basis: Theta * E = Id, columns of E
  Eigen::MatrixXcd E = Theta.fullPivLu().inverse();
  // coefficient matrix of F at x: F(u, v) = u^T V v
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [I, f] : F.terms) {
    Complex v = f(xp).value();
    V(I[0], I[1]) += v;
    V(I[1], I[0]) -= v;
  }
  Eigen::MatrixXcd c = E.transpose() * V * E;
  return c;
}

FormField assemble(const Eigen::MatrixXcd& c,
                   const std::vector<FormField>& coframe) {
  int dim = static_cast<int>(coframe.size());
  FormField F = zero_form(coframe[0].dim, 2);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      if (c(a, b) == Complex(0.0)) continue;
      F = add(F, scale(c(a, b), wedge(coframe[a], coframe[b])));
    }
  return F;
}

}  // namespace lcl::extcalc
