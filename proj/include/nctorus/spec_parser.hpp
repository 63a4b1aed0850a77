#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nctorus/circle.hpp"
#include "nctorus/counterexample.hpp"
#include "nctorus/io.hpp"
#include "nctorus/nc_poly.hpp"

namespace nct {

/// Real literal: a decimal number, `pi`, or a product like `2*pi`, `0.5pi`.
double parse_real(std::string_view s);

/// `1`, `-0.5`, `i`, `0.3-2i`, `cis(0.7)` (= e^{0.7i}).
cplx parse_complex(std::string_view s);

/// Rotation angle in radians: a real literal, `golden`, or
/// `liouville:levels=<int>[,seed=<int>]`.
double parse_theta(std::string_view s);

/// Deformation parameter: a real literal, `p/q`, or `golden` (= phi - 1).
double parse_alpha(std::string_view s);

/// Complex literal, or `theta` / `nu` for e^{i theta} / e^{i nu}.
cplx parse_lambda(std::string_view s, double theta, double nu = kDefaultNu);

/// The same spec as an angle: exact for `theta`, `nu` and `cis(x)`, the
/// argument of the literal otherwise. Throws ParseError unless |lambda| = 1.
Angle parse_lambda_angle(std::string_view s, double theta, double nu = kDefaultNu);

/// Sum of monomials in U and V, e.g. `0.5*1 + UV`, `U^2V^-1 - (1+i)*V`.
/// Words are multiplied in A_alpha, so `VU` picks up its commutation phase.
NCPoly parse_poly(std::string_view s, double alpha);

/// Parsed winding-map spec together with what it pins down.
struct MapSpec {
  WindingMap f;
  std::string kind;
  /// Set for `furstenberg:` specs: the construction angle and its JSON.
  std::optional<double> theta;
  std::optional<double> nu;
  std::optional<json> construction;
};

/// `char:z0=<complex>,w=<int>`, `exp-sin:amp=<real>,freq=<int>[,w=<int>]`,
/// `furstenberg:levels=<int>[,seed=<int>][,nu=<real>][,tilde=<0|1>]`.
/// Throws ParseError carrying the offending position.
MapSpec parse_map(std::string_view s);

}  // namespace nct
