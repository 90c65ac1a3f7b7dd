#include "locspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace locspec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const json& field(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail("missing config field: " + key);
  return *it;
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
}

CoefficientCurve parse_curve(const json& j) {
  try {
    if (j.is_number()) return CoefficientCurve::constant(j.get<double>());
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "constant")
      return CoefficientCurve::constant(field(j, "value").get<double>());
    if (kind == "polynomial")
      return CoefficientCurve::polynomial(
          field(j, "coefficients").get<std::vector<double>>());
    CurveKind ck;
    if (kind == "piecewise-constant")
      ck = CurveKind::PiecewiseConstant;
    else if (kind == "piecewise-linear")
      ck = CurveKind::PiecewiseLinear;
    else
      fail("unknown curve kind: " + kind);
    return CoefficientCurve(ck,
                            field(j, "breakpoints").get<std::vector<double>>(),
                            field(j, "values").get<std::vector<double>>());
  } catch (const json::exception& e) {
    fail(std::string("bad curve spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad curve spec: ") + e.what());
  }
}

TvArmaModel parse_model(const json& j) {
  try {
    std::vector<CoefficientCurve> alpha, beta;
    if (j.contains("alpha"))
      for (const auto& c : j.at("alpha")) alpha.push_back(parse_curve(c));
    if (j.contains("beta"))
      for (const auto& c : j.at("beta")) beta.push_back(parse_curve(c));
    CoefficientCurve sigma = j.contains("sigma")
                                 ? parse_curve(j.at("sigma"))
                                 : CoefficientCurve::constant(1.0);
    std::string inn = get_or<std::string>(j, "innovation", "gaussian");
    Innovation innovation;
    if (inn == "gaussian")
      innovation = Innovation::Gaussian;
    else if (inn == "standardized-uniform")
      innovation = Innovation::StandardizedUniform;
    else
      fail("unknown innovation: " + inn);
    double margin = get_or(j, "stability_margin", 0.1);
    return TvArmaModel(std::move(alpha), std::move(beta), std::move(sigma),
                       innovation, margin);
  } catch (const json::exception& e) {
    fail(std::string("bad model spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad model spec: ") + e.what());
  }
}

Taper parse_taper(const json& j) {
  try {
    std::string kind =
        j.is_string() ? j.get<std::string>()
                      : field(j, "kind").get<std::string>();
    if (kind == "none") return Taper::none();
    if (kind == "cosine") return Taper::cosine();
    if (kind == "segment")
      return Taper::segment(field(j, "lo").get<double>(),
                            field(j, "hi").get<double>());
    fail("unknown taper kind: " + kind);
  } catch (const json::exception& e) {
    fail(std::string("bad taper spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad taper spec: ") + e.what());
  }
}

FrequencyPart parse_frequency_part(const json& j) {
  try {
    std::string kind = j.is_string() ? j.get<std::string>()
                                     : field(j, "kind").get<std::string>();
    if (kind == "one") return FrequencyPart::one();
    if (kind == "cosine")
      return FrequencyPart::cosine(field(j, "k").get<int>());
    if (kind == "indicator")
      return FrequencyPart::indicator(field(j, "mu").get<double>());
    fail("unknown frequency part kind: " + kind);
  } catch (const json::exception& e) {
    fail(std::string("bad frequency part: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad frequency part: ") + e.what());
  }
}

SpectralFunctional parse_functional(const json& j) {
  try {
    SpectralFunctional phi;
    auto add = [&](const json& term) {
      CoefficientCurve w = term.contains("weight")
                               ? parse_curve(term.at("weight"))
                               : CoefficientCurve::constant(1.0);
      phi.add_term(std::move(w), parse_frequency_part(field(term, "psi")));
    };
    if (j.contains("terms"))
      for (const auto& t : j.at("terms")) add(t);
    else
      add(j);
    if (phi.terms().empty()) fail("functional has no terms");
    return phi;
  } catch (const json::exception& e) {
    fail(std::string("bad functional spec: ") + e.what());
  }
}

ParametricSpectralFamily parse_family(const json& j) {
  try {
    std::string kind = j.is_string() ? j.get<std::string>()
                                     : field(j, "kind").get<std::string>();
    ParametricSpectralFamily family = [&]() {
      if (kind == "white-noise") return ParametricSpectralFamily::white_noise();
      if (kind == "ar")
        return ParametricSpectralFamily::ar(field(j, "p").get<int>());
      if (kind == "ma")
        return ParametricSpectralFamily::ma(field(j, "q").get<int>());
      if (kind == "arma")
        return ParametricSpectralFamily::arma(field(j, "p").get<int>(),
                                              field(j, "q").get<int>());
      fail("unknown family kind: " + kind);
    }();
    if (j.is_object() && j.contains("box")) {
      ParameterBox box;
      box.lo = j.at("box").at("lo").get<std::vector<double>>();
      box.hi = j.at("box").at("hi").get<std::vector<double>>();
      family.set_box(std::move(box));
    }
    return family;
  } catch (const json::exception& e) {
    fail(std::string("bad family spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad family spec: ") + e.what());
  }
}

SmoothingKernel parse_kernel(const json& j) {
  try {
    std::string kind = j.is_string() ? j.get<std::string>()
                                     : field(j, "kind").get<std::string>();
    return SmoothingKernel(kernel_kind_from_string(kind));
  } catch (const json::exception& e) {
    fail(std::string("bad kernel spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("bad kernel spec: ") + e.what());
  }
}

OptimizerConfig parse_optimizer(const json& j) {
  try {
    OptimizerConfig cfg;
    cfg.max_iterations = get_or(j, "max_iterations", cfg.max_iterations);
    cfg.grad_tol = get_or(j, "grad_tol", cfg.grad_tol);
    cfg.max_line_search = get_or(j, "max_line_search", cfg.max_line_search);
    if (cfg.max_iterations < 1 || cfg.grad_tol <= 0.0)
      fail("optimizer config out of range");
    return cfg;
  } catch (const json::exception& e) {
    fail(std::string("bad optimizer spec: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    out << "\n";
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

json report_to_json(const McReport& report) {
  json j;
  j["experiment"] = report.experiment;
  j["pass"] = report.pass;
  // Wall-clock lives in the run manifest; the report itself must be
  // bit-reproducible.
  j["criteria"] = json::array();
  for (const auto& c : report.criteria)
    j["criteria"].push_back({{"name", c.name},
                             {"value", c.value},
                             {"threshold", c.threshold},
                             {"pass", c.pass},
                             {"detail", c.detail}});
  j["tables"] = json::object();
  for (const auto& [name, table] : report.tables)
    j["tables"][name] = {{"columns", table.columns}, {"rows", table.rows}};
  return j;
}

std::vector<std::string> write_report_tables(const std::string& dir,
                                             const std::string& stem,
                                             const McReport& report) {
  std::vector<std::string> paths;
  for (const auto& [name, table] : report.tables) {
    std::string path = dir + "/" + stem + "_" + name + ".csv";
    write_csv(path, table.columns, table.rows);
    paths.push_back(path);
  }
  return paths;
}

json RunManifest::to_json() const {
  return json{{"command", command},   {"config_path", config_path},
              {"config", config},     {"outputs", outputs},
              {"seed", seed},         {"version", version},
              {"wall_seconds", wall_seconds}};
}

RunManifest RunManifest::from_json(const json& j) {
  RunManifest m;
  try {
    m.command = field(j, "command").get<std::string>();
    m.config_path = get_or<std::string>(j, "config_path", "");
    m.config = field(j, "config");
    m.outputs = get_or(j, "outputs", std::vector<std::string>{});
    m.seed = get_or<std::uint64_t>(j, "seed", 0);
    m.version = get_or<std::string>(j, "version", kVersion);
    m.wall_seconds = get_or(j, "wall_seconds", 0.0);
  } catch (const json::exception& e) {
    fail(std::string("bad manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  write_text(path, manifest.to_json().dump(2) + "\n");
}

RunManifest load_manifest(const std::string& path) {
  return RunManifest::from_json(load_json(path));
}

}  // namespace locspec
