#include "esrk/methods.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "esrk/phi.hpp"

namespace esrk {

std::string to_string(Family f) {
  switch (f) {
    case Family::IERK: return "IERK";
    case Family::EERK: return "EERK";
    case Family::CIFRK_TIF: return "CIFRK_TIF";
    case Family::CIFRK_NIF: return "CIFRK_NIF";
    case Family::Lawson: return "Lawson";
  }
  return "?";
}

std::string to_string(CifVariant v) { return v == CifVariant::TIF ? "tif" : "nif"; }

SmallMatrix Method::coefficients(double z) const {
  if (family == Family::IERK) {
    throw std::logic_error("Method::coefficients: IERK methods use constant tableaux");
  }
  if (family == Family::Lawson) return explicit_part;
  return generator(z);
}

std::string Method::id() const {
  if (family == Family::CIFRK_TIF) return name + ":tif";
  if (family == Family::CIFRK_NIF) return name + ":nif";
  return name;
}

std::string Method::label() const {
  if (params.empty()) return id();
  std::ostringstream os;
  os << id() << "(" << std::setprecision(6);
  bool first = true;
  for (const auto& [k, v] : params) {
    os << (first ? "" : ",") << k << "=" << v;
    first = false;
  }
  os << ")";
  return os.str();
}

namespace {

double param_or(const ParamMap& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const ParamMap& p, std::initializer_list<const char*> allowed,
                    const std::string& who) {
  for (const auto& [k, v] : p) {
    (void)v;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw std::invalid_argument(who + ": unknown parameter '" + k + "'");
    }
  }
}

void check_canopy(const Method& m) {
  // Row i of A_I and A_E both sum to c_{i+1} (the first implicit column, a_{i,1},
  // is carried by the steady-state form and recovered as c - rowsum).
  for (int i = 0; i < m.stages; ++i) {
    const double ce = m.explicit_part.row_sum(i);
    const double ci = m.abscissas[i + 1];
    if (std::abs(ce - ci) > 1e-14) {
      throw std::logic_error(m.name + ": explicit canopy condition fails in row " +
                             std::to_string(i + 2));
    }
  }
}

}  // namespace

Method ierk_tableau(const std::string& name, const ParamMap& params) {
  Method m;
  m.name = name;
  m.family = Family::IERK;
  if (name == "ierk2") {
    reject_unknown(params, {"a33"}, name);
    const double r2 = std::sqrt(2.0);
    const double a33 = param_or(params, "a33", (1.0 + r2) / 4.0);
    if (!(a33 >= (1.0 + r2) / 4.0 - 1e-15)) {
      throw std::invalid_argument("ierk2: a33 must be >= (1+sqrt2)/4");
    }
    m.params = {{"a33", a33}};
    m.stages = 2;
    m.order = 2;
    m.abscissas = {0.0, r2 / 2.0, 1.0};
    // Full implicit rows (i = 2, 3): (a_{i1}, a_{i2}, a_{i3}); A_I drops column 1.
    m.implicit_part = SmallMatrix{{a33, 0.0}, {(1.0 - 2.0 * a33) / r2, a33}};
    m.explicit_part = SmallMatrix{{r2 / 2.0, 0.0}, {(2.0 - r2) / 2.0, r2 / 2.0}};
  } else if (name == "ierk3") {
    reject_unknown(params, {"a43"}, name);
    const double a43 = param_or(params, "a43", -0.5);
    if (!(a43 >= -0.633312 && a43 <= -0.371114)) {
      throw std::invalid_argument("ierk3: a43 must lie in [-0.633312, -0.371114]");
    }
    m.params = {{"a43", a43}};
    m.stages = 4;
    m.order = 3;
    m.abscissas = {0.0, 4.0 / 5.0, 7.0 / 5.0, 6.0 / 5.0, 1.0};
    const double g = 18.0 / 25.0;
    const double a42 = -7.0 * a43 / 4.0 - 1229.0 / 12600.0;
    m.implicit_part = SmallMatrix{
        {g, 0.0, 0.0, 0.0},
        {61.0 / 200.0, g, 0.0, 0.0},
        {a42, a43, g, 0.0},
        {276523.0 / 1233000.0, -196127.0 / 1078875.0, -2068.0 / 17125.0, g},
    };
    m.explicit_part = SmallMatrix{
        {4.0 / 5.0, 0.0, 0.0, 0.0},
        {3.0 / 5.0, 4.0 / 5.0, 0.0, 0.0},
        {10111.0 / 10080.0, -6079.0 / 10080.0, 4.0 / 5.0, 0.0},
        {313.0 / 840.0, 131.0 / 360.0, -169.0 / 315.0, 4.0 / 5.0},
    };
  } else {
    throw std::invalid_argument("unknown IERK method '" + name + "'");
  }
  check_canopy(m);
  return m;
}

namespace {

struct EerkParams {
  double c2 = 0.0;
  double c3 = 0.0;
};

EerkParams eerk_params(const std::string& name, const ParamMap& params) {
  EerkParams p;
  if (name == "eerk2") {
    reject_unknown(params, {"c2"}, name);
    p.c2 = param_or(params, "c2", 0.5);
    if (!(p.c2 >= 0.5 && p.c2 <= 1.0)) throw std::invalid_argument("eerk2: c2 must lie in [1/2, 1]");
  } else if (name == "eerk2w") {
    reject_unknown(params, {"c2"}, name);
    p.c2 = param_or(params, "c2", 3.0 / 11.0);
    if (!(p.c2 >= 3.0 / 11.0 - 1e-15 && p.c2 <= 1.0)) {
      throw std::invalid_argument("eerk2w: c2 must lie in [3/11, 1]");
    }
  } else if (name == "eerk3_1") {
    reject_unknown(params, {"c2"}, name);
    p.c2 = param_or(params, "c2", 4.0 / 9.0);
    if (!(p.c2 > 0.0 && p.c2 <= 1.0)) throw std::invalid_argument("eerk3_1: c2 must lie in (0, 1]");
  } else if (name == "eerk3_2") {
    reject_unknown(params, {"c2", "c3"}, name);
    p.c2 = param_or(params, "c2", 0.5);
    p.c3 = param_or(params, "c3", 0.7);
    if (!(p.c2 > 0.0 && p.c3 > 0.0)) throw std::invalid_argument("eerk3_2: abscissas must be positive");
    if (std::abs(p.c2 - 2.0 / 3.0) < 1e-14 || std::abs(p.c2 - p.c3) < 1e-14) {
      throw std::invalid_argument("eerk3_2: requires c2 != 2/3 and c2 != c3");
    }
  } else {
    throw std::invalid_argument("unknown EERK method '" + name + "'");
  }
  return p;
}

SmallMatrix eerk_matrix(const std::string& name, const EerkParams& p, double z) {
  if (!(z <= 0.0)) throw std::invalid_argument(name + ": z must be <= 0");
  const double c2 = p.c2;
  const double p1 = phi(1, z);
  const double p2 = phi(2, z);
  if (name == "eerk2") {
    return SmallMatrix{{c2 * phi(1, c2 * z), 0.0}, {p1 - p2 / c2, p2 / c2}};
  }
  if (name == "eerk2w") {
    return SmallMatrix{{c2 * phi(1, c2 * z), 0.0}, {p1 - p1 / (2.0 * c2), p1 / (2.0 * c2)}};
  }
  if (name == "eerk3_1") {
    const double c3 = 2.0 / 3.0;
    const double p23 = phi(2, c3 * z);
    const double a32 = 4.0 / (9.0 * c2) * p23;
    return SmallMatrix{
        {c2 * phi(1, c2 * z), 0.0, 0.0},
        {c3 * phi(1, c3 * z) - a32, a32, 0.0},
        {p1 - 1.5 * p2, 0.0, 1.5 * p2},
    };
  }
  // eerk3_2
  const double c3 = p.c3;
  const double gamma = (3.0 * c3 - 2.0) * c3 / ((2.0 - 3.0 * c2) * c2);
  const double a32 = gamma * c2 * phi(2, c2 * z) + c3 * c3 / c2 * phi(2, c3 * z);
  const double denom = gamma * c2 + c3;
  const double a42 = gamma / denom * p2;
  const double a43 = 1.0 / denom * p2;
  return SmallMatrix{
      {c2 * phi(1, c2 * z), 0.0, 0.0},
      {c3 * phi(1, c3 * z) - a32, a32, 0.0},
      {p1 - a42 - a43, a42, a43},
  };
}

}  // namespace

SmallMatrix eerk_coeff(const std::string& name, const ParamMap& params, double z) {
  return eerk_matrix(name, eerk_params(name, params), z);
}

Method eerk_method(const std::string& name, const ParamMap& params) {
  const EerkParams p = eerk_params(name, params);
  Method m;
  m.name = name;
  m.family = Family::EERK;
  if (name == "eerk2" || name == "eerk2w") {
    m.stages = 2;
    m.order = 2;
    m.abscissas = {0.0, p.c2, 1.0};
    m.params = {{"c2", p.c2}};
  } else if (name == "eerk3_1") {
    m.stages = 3;
    m.order = 3;
    m.abscissas = {0.0, p.c2, 2.0 / 3.0, 1.0};
    m.params = {{"c2", p.c2}};
  } else {
    m.stages = 3;
    m.order = 3;
    m.abscissas = {0.0, p.c2, p.c3, 1.0};
    m.params = {{"c2", p.c2}, {"c3", p.c3}};
  }
  m.generator = [name, p](double z) { return eerk_matrix(name, p, z); };
  return m;
}

SmallMatrix explicit_tableau(const std::string& base) {
  if (base == "heun2") return SmallMatrix{{1.0, 0.0}, {0.5, 0.5}};
  if (base == "ralston2") return SmallMatrix{{2.0 / 3.0, 0.0}, {0.25, 0.75}};
  if (base == "heun3") {
    return SmallMatrix{{1.0 / 3.0, 0.0, 0.0}, {0.0, 2.0 / 3.0, 0.0}, {0.25, 0.0, 0.75}};
  }
  if (base == "ralston3") {
    return SmallMatrix{{0.5, 0.0, 0.0}, {0.0, 0.75, 0.0}, {2.0 / 9.0, 1.0 / 3.0, 4.0 / 9.0}};
  }
  throw std::invalid_argument("unknown explicit tableau '" + base + "'");
}

namespace {

std::string cif_base(const std::string& name) {
  if (name == "cif2_heun") return "heun2";
  if (name == "cif2_ralston") return "ralston2";
  if (name == "cif3_heun") return "heun3";
  if (name == "cif3_ralston") return "ralston3";
  throw std::invalid_argument("unknown CIFRK method '" + name + "'");
}

/// (e^{a z} - 1) / z without cancellation near z = 0.
double expm1_over(double a, double z) { return a * phi(1, a * z); }

SmallMatrix tif_matrix(const std::string& name, double z) {
  const double e = std::exp(z);
  if (name == "cif2_heun") {
    const double den = 2.0 * e - z * (1.0 + e);
    // 1 / (2 - z (1 + e^{-z})) rewritten as e^z / (2 e^z - z (1 + e^z)).
    return SmallMatrix{{1.0 / (1.0 - z), 0.0}, {e / den, 1.0 / den}};
  }
  if (name == "cif2_ralston") {
    const double e23 = std::exp(2.0 * z / 3.0);
    const double den = (4.0 - z) * e23 - 3.0 * z;
    return SmallMatrix{{2.0 / (3.0 - 2.0 * z), 0.0}, {e23 / den, 3.0 / den}};
  }
  if (name == "cif3_heun") {
    const double e13 = std::exp(z / 3.0);
    const double e23 = std::exp(2.0 * z / 3.0);
    const double den = e23 * (4.0 - z) - 3.0 * z;
    return SmallMatrix{
        {1.0 / (3.0 - z), 0.0, 0.0},
        {0.0, 2.0 / (3.0 * e13 - 2.0 * z), 0.0},
        {e23 / den, 0.0, 3.0 / den},
    };
  }
  // cif3_ralston
  const double e12 = std::exp(z / 2.0);
  const double e14 = std::exp(z / 4.0);
  const double e34 = std::exp(3.0 * z / 4.0);
  const double den = e34 * (9.0 - 2.0 * z) - 3.0 * e14 * z - 4.0 * z;
  return SmallMatrix{
      {1.0 / (2.0 - z), 0.0, 0.0},
      {0.0, 3.0 / (4.0 * e12 - 3.0 * z), 0.0},
      {2.0 * e34 / den, 3.0 * e14 / den, 4.0 / den},
  };
}

SmallMatrix nif_matrix(const std::string& name, double z) {
  const double e = std::exp(z);
  const double p1 = phi(1, z);
  if (name == "cif2_heun") {
    return SmallMatrix{{p1, 0.0}, {0.5 * e, p1 - 0.5 * e}};
  }
  if (name == "cif2_ralston") {
    return SmallMatrix{{expm1_over(2.0 / 3.0, z), 0.0}, {0.25 * e, p1 - 0.25 * e}};
  }
  if (name == "cif3_heun") {
    return SmallMatrix{
        {expm1_over(1.0 / 3.0, z), 0.0, 0.0},
        {0.0, expm1_over(2.0 / 3.0, z), 0.0},
        {0.25 * e, 0.0, p1 - 0.25 * e},
    };
  }
  const double e12 = std::exp(z / 2.0);
  return SmallMatrix{
      {expm1_over(0.5, z), 0.0, 0.0},
      {0.0, expm1_over(0.75, z), 0.0},
      {2.0 * e / 9.0, e12 / 3.0, p1 - e12 / 3.0 - 2.0 * e / 9.0},
  };
}

std::vector<double> abscissas_of(const SmallMatrix& tableau) {
  std::vector<double> c{0.0};
  for (std::size_t i = 0; i < tableau.dim(); ++i) c.push_back(tableau.row_sum(i));
  c.back() = 1.0;
  return c;
}

}  // namespace

SmallMatrix cifrk_coeff(const std::string& name, CifVariant variant, double z) {
  const std::string base = cif_base(name);
  if (!(z <= 0.0)) throw std::invalid_argument(name + ": z must be <= 0");
  if (z == 0.0) return explicit_tableau(base);
  return variant == CifVariant::TIF ? tif_matrix(name, z) : nif_matrix(name, z);
}

Method cifrk_method(const std::string& name, CifVariant variant) {
  const std::string base = cif_base(name);
  Method m;
  m.name = name;
  m.family = variant == CifVariant::TIF ? Family::CIFRK_TIF : Family::CIFRK_NIF;
  m.explicit_part = explicit_tableau(base);
  m.stages = static_cast<int>(m.explicit_part.dim());
  m.order = m.stages;
  m.abscissas = abscissas_of(m.explicit_part);
  m.generator = [name, variant](double z) { return cifrk_coeff(name, variant, z); };
  return m;
}

Method lawson_method(const std::string& name) {
  std::string base;
  if (name == "lawson" || name == "lawson2_heun") base = "heun2";
  else if (name == "lawson2_ralston") base = "ralston2";
  else if (name == "lawson3_heun") base = "heun3";
  else if (name == "lawson3_ralston") base = "ralston3";
  else throw std::invalid_argument("unknown Lawson method '" + name + "'");
  Method m;
  m.name = name == "lawson" ? "lawson2_heun" : name;
  m.family = Family::Lawson;
  m.explicit_part = explicit_tableau(base);
  m.stages = static_cast<int>(m.explicit_part.dim());
  m.order = m.stages;
  m.abscissas = abscissas_of(m.explicit_part);
  return m;
}

Method make_method(const std::string& id, const ParamMap& params) {
  const auto colon = id.find(':');
  const std::string name = id.substr(0, colon);
  const std::string variant = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (name.rfind("ierk", 0) == 0) return ierk_tableau(name, params);
  if (name.rfind("eerk", 0) == 0) return eerk_method(name, params);
  if (name.rfind("cif", 0) == 0) {
    if (!params.empty()) throw std::invalid_argument(name + ": takes no parameters");
    if (variant == "tif" || variant == "TIF") return cifrk_method(name, CifVariant::TIF);
    if (variant == "nif" || variant == "NIF") return cifrk_method(name, CifVariant::NIF);
    throw std::invalid_argument(name + ": variant must be tif or nif (use '" + name + ":tif')");
  }
  if (name.rfind("lawson", 0) == 0) {
    if (!params.empty()) throw std::invalid_argument(name + ": takes no parameters");
    return lawson_method(name);
  }
  throw std::invalid_argument("unknown method '" + id + "'");
}

std::vector<std::string> method_names() {
  return {"ierk2",     "ierk3",        "eerk2",     "eerk2w",       "eerk3_1",
          "eerk3_2",   "cif2_heun",    "cif2_ralston", "cif3_heun", "cif3_ralston",
          "lawson2_heun", "lawson2_ralston", "lawson3_heun", "lawson3_ralston"};
}

std::vector<Method> certified_methods() {
  std::vector<Method> out;
  out.push_back(ierk_tableau("ierk2"));
  out.push_back(ierk_tableau("ierk3"));
  out.push_back(eerk_method("eerk2", {{"c2", 0.5}}));
  out.push_back(eerk_method("eerk2", {{"c2", 1.0}}));
  out.push_back(eerk_method("eerk2w", {{"c2", 3.0 / 11.0}}));
  out.push_back(eerk_method("eerk2w", {{"c2", 0.5}}));
  out.push_back(eerk_method("eerk3_1", {{"c2", 4.0 / 9.0}}));
  out.push_back(eerk_method("eerk3_2", {{"c2", 0.5}, {"c3", 0.7}}));
  for (const char* n : {"cif2_heun", "cif2_ralston", "cif3_heun", "cif3_ralston"}) {
    out.push_back(cifrk_method(n, CifVariant::TIF));
    out.push_back(cifrk_method(n, CifVariant::NIF));
  }
  return out;
}

}  // namespace esrk
