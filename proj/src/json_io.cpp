#include "polybound/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "polybound/error.hpp"

namespace polybound {

namespace {

template <typename Enum, typename Namer>
Enum enum_from_name(const std::string& name, std::initializer_list<Enum> values, Namer namer,
                    const char* what) {
  for (const Enum v : values) {
    if (namer(v) == name) return v;
  }
  throw DomainError(std::string("unknown ") + what + " '" + name + "'");
}

void dump_into(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(out, value);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        dump_into(out, value);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

double number_or_nan(const Json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

Json to_json(const BoundResult& bound) {
  Json inputs = Json::object();
  for (const auto& [name, value] : bound.inputs) inputs[name] = value;
  return Json{{"quantity", bound.quantity},
              {"direction", direction_name(bound.direction)},
              {"value", bound.value},
              {"strict", bound.strict},
              {"route", route_name(bound.route)},
              {"status", status_name(bound.status)},
              {"inputs", inputs},
              {"note", bound.note}};
}

Json to_json(const VerificationReport& report) {
  return Json{{"grid_size", report.grid_size},
              {"checked", report.checked},
              {"skipped", report.skipped},
              {"violations", report.violations},
              {"worst_margin", report.worst_margin},
              {"outside", report.outside},
              {"outside_failing", report.outside_failing},
              {"passed", report.passed()}};
}

Json to_json(const FitResult& fit) {
  Json j{{"model", fit.model == FitModel::Monomial ? "monomial" : "rational"}};
  if (fit.model == FitModel::Monomial) {
    j["a"] = fit.parameters.at(0);
    j["b"] = fit.parameters.at(1);
  } else {
    const std::size_t np = fit.p_exponents.size();
    Json p = Json::array();
    Json q = Json::array();
    for (std::size_t i = 0; i < np; ++i) {
      p.push_back({{"coefficient", fit.parameters.at(i)}, {"exponent", fit.p_exponents[i]}});
    }
    for (std::size_t i = 0; i < fit.q_exponents.size(); ++i) {
      q.push_back({{"coefficient", fit.parameters.at(np + i)}, {"exponent", fit.q_exponents[i]}});
    }
    j["numerator"] = p;
    j["denominator"] = q;
  }
  j["residual_rms"] = fit.residual_rms;
  j["n_points"] = fit.n_points;
  return j;
}

Json to_json(const ScanPoint& point) {
  return Json{{"k", point.k},
              {"gamma", point.gamma},
              {"rho_c", point.rho_c},
              {"mass", point.mass},
              {"radius", point.radius},
              {"causal", point.causal},
              {"v2_center", point.v2_center},
              {"status", status_name(point.status)}};
}

Json to_json(std::span<const ScanPoint> points) {
  Json j = Json::array();
  for (const auto& p : points) j.push_back(to_json(p));
  return j;
}

BoundResult bound_from_json(const Json& j) {
  try {
    BoundResult out;
    out.quantity = j.at("quantity").get<std::string>();
    out.direction = enum_from_name(j.at("direction").get<std::string>(),
                                   {BoundDirection::Upper, BoundDirection::Lower},
                                   [](BoundDirection d) { return direction_name(d); }, "direction");
    out.value = number_or_nan(j.at("value"));
    out.strict = j.at("strict").get<bool>();
    out.route = enum_from_name(
        j.at("route").get<std::string>(),
        {BoundRoute::NewtonianCausal, BoundRoute::MassRadiusCorner, BoundRoute::MassDerivativeDensity,
         BoundRoute::MassDerivativeGamma, BoundRoute::MassDerivativeRadius, BoundRoute::MonomialCausal,
         BoundRoute::MonomialCausalConsistent, BoundRoute::RationalCausal},
        [](BoundRoute r) { return route_name(r); }, "route");
    out.status = enum_from_name(
        j.at("status").get<std::string>(),
        {BoundStatus::Constrained, BoundStatus::Vacuous, BoundStatus::Infeasible},
        [](BoundStatus s) { return status_name(s); }, "status");
    for (const auto& [name, value] : j.at("inputs").items()) {
      out.inputs.emplace_back(name, number_or_nan(value));
    }
    if (j.contains("note")) out.note = j.at("note").get<std::string>();
    return out;
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed bound JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(out, j);
  return out;
}

}  // namespace polybound
