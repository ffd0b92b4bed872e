#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "esrk/small_matrix.hpp"

namespace esrk {

enum class Family {
  IERK,       ///< implicit-explicit, constant tableaux
  EERK,       ///< explicit exponential, phi-function coefficients
  CIFRK_TIF,  ///< telescopic-corrected integrating factor
  CIFRK_NIF,  ///< nonlinear-term-translation corrected integrating factor
  Lawson,     ///< uncorrected integrating factor (reference only, not certified)
};

std::string to_string(Family f);

using ParamMap = std::map<std::string, double>;

/// One Runge-Kutta method with s interior stages and abscissas
/// c_1 = 0, ..., c_{s+1} = 1.
///
/// IERK methods carry two constant s x s blocks A_I = (a_{i+1,j+1}) and
/// A_E = (a-hat_{i+1,j}). EERK and CIFRK methods carry a generator
/// z -> A(z) = (a_{i+1,j}(z)). Lawson methods keep the underlying explicit
/// tableau A_E(0) in explicit_part.
struct Method {
  std::string name;
  Family family = Family::EERK;
  int stages = 0;
  std::vector<double> abscissas;
  ParamMap params;
  int order = 0;
  SmallMatrix implicit_part;
  SmallMatrix explicit_part;
  std::function<SmallMatrix(double)> generator;

  /// A(z) for EERK/CIFRK; A_E(0) for Lawson. Throws std::logic_error for IERK.
  SmallMatrix coefficients(double z) const;
  /// Registry identifier: name, plus ":tif"/":nif" for CIFRK.
  std::string id() const;
  /// id with parameters, e.g. "eerk2w(c2=0.272727)".
  std::string label() const;
};

/// IERK tableaux: "ierk2" (param a33, default (1+sqrt2)/4, a33 >= (1+sqrt2)/4)
/// and "ierk3" (param a43, default -1/2, a43 in [-0.633312, -0.371114]).
Method ierk_tableau(const std::string& name, const ParamMap& params = {});

/// EERK coefficient matrix at z <= 0 for "eerk2", "eerk2w", "eerk3_1",
/// "eerk3_2" (params c2, c3).
SmallMatrix eerk_coeff(const std::string& name, const ParamMap& params, double z);
Method eerk_method(const std::string& name, const ParamMap& params = {});

enum class CifVariant { TIF, NIF };
std::string to_string(CifVariant v);

/// CIFRK coefficient matrix at z <= 0 for "cif2_heun", "cif2_ralston",
/// "cif3_heun", "cif3_ralston". At z = 0 returns the underlying explicit tableau.
SmallMatrix cifrk_coeff(const std::string& name, CifVariant variant, double z);
Method cifrk_method(const std::string& name, CifVariant variant);

/// Uncorrected Lawson method on the Heun/Ralston tableau ("lawson2_heun",
/// "lawson2_ralston", "lawson3_heun", "lawson3_ralston"; "lawson" is an alias
/// of "lawson2_heun").
Method lawson_method(const std::string& name);

/// Underlying explicit tableau A_E(0) of the Heun/Ralston schemes.
SmallMatrix explicit_tableau(const std::string& base);

/// Registry lookup. Accepts "cif2_heun:tif" style ids for CIFRK.
Method make_method(const std::string& id, const ParamMap& params = {});

/// Base names known to make_method.
std::vector<std::string> method_names();

/// Every method/parameter combination with a registered lower bound.
std::vector<Method> certified_methods();

}  // namespace esrk
