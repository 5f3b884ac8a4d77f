#pragma once

// Numerical exterior calculus on a coordinate patch. A k-form stores one
// complex coefficient closure per strictly increasing multi-index; every
// closure must accept hyperdual points. Differentiation never stores symbols:
// the exterior derivative seeds whichever hyperdual slot of the incoming
// point is still free, so d can be applied twice (and no more) with exact
// results.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lcl/hyperdual.hpp"

namespace lcl::extcalc {

struct Patch {
  int dim = 0;
  std::vector<std::string> names;
  std::vector<std::array<double, 2>> box;
};

Patch make_patch(std::vector<std::string> names,
                 std::vector<std::array<double, 2>> box);

using Coeff = std::function<CHD2(const HD2Vec&)>;

// d/dx^m of a coefficient closure. The returned closure consumes one free
// hyperdual slot of the point it is evaluated at; two nested partials use up
// both slots, a third throws.
Coeff partial(const Coeff& f, int m);

struct FormField {
  int dim = 0;
  int degree = 0;
  std::map<std::vector<int>, Coeff> terms;  // strictly increasing indices
};

FormField zero_form(int dim, int degree);
FormField fn_form(int dim, Coeff f);                    // degree 0
FormField dx(int dim, int i);                           // coordinate 1-form
FormField scale(std::complex<double> c, const FormField& a);
FormField add(const FormField& a, const FormField& b);
FormField sub(const FormField& a, const FormField& b);
FormField conj(const FormField& a);
FormField wedge(const FormField& a, const FormField& b);
FormField mul(const Coeff& f, const FormField& a);      // fn * form
FormField d(const FormField& a);

// Pullback along a hyperdual-evaluable map into a patch of dimension
// codim = phi output size; a lives there, the result lives on dim_src.
using MapFn = std::function<HD2Vec(const HD2Vec&)>;
FormField pullback(const FormField& a, const MapFn& phi, int dim_src);

// Multilinear evaluation on (complex) tangent vectors at a real point.
std::complex<double> evaluate(const FormField& a, const Eigen::VectorXd& x,
                              const std::vector<Eigen::VectorXcd>& vectors);

// Coefficients c_{ab} (a < b) with F = sum_{a<b} c_{ab} theta^a ^ theta^b at
// x, obtained by evaluating F on the dual basis of the coframe.
Eigen::MatrixXcd expand_2form(const FormField& F,
                              const std::vector<FormField>& coframe,
                              const Eigen::VectorXd& x,
                              double cond_limit = 1e8);

// sum_{a<b} c_{ab} theta^a ^ theta^b with constant coefficients.
FormField assemble(const Eigen::MatrixXcd& c,
                   const std::vector<FormField>& coframe);

}  // namespace lcl::extcalc
