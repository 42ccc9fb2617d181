#include "koethe/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "koethe/descriptor.hpp"
#include "koethe/errors.hpp"
#include "koethe/ideals.hpp"
#include "koethe/multipliers.hpp"
#include "koethe/optimize.hpp"
#include "koethe/space.hpp"
#include "koethe/summing.hpp"
#include "koethe/verify.hpp"

namespace koethe {
namespace {

using Json = nlohmann::ordered_json;

std::string real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON text with every real at 17 significant digits; non-finite reals become strings.
void emit(const Json& j, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        emit(v, os, indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        emit(v, os, indent, depth + 1);
      }
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? real(v) : Json(real(v)).dump());
      return;
    }
    default:
      os << j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError(std::string("empty entry in ") + what);
    item = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw ParseError(std::string("invalid number '") + item + "' in " + what);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError(std::string("empty ") + what);
  return out;
}

std::vector<double> reals_from(const Json& j, const char* what) {
  if (j.is_string()) return parse_reals(j.get<std::string>(), what);
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array or a comma-separated string");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string(what) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

CoefficientVector nonnegative(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (x < 0.0) throw ParseError(std::string(what) + " entries must be nonnegative");
  }
  return CoefficientVector(v);
}

/// Inline flags; unset optionals fall back to the config document.
struct Flags {
  std::optional<std::string> space, domain, target, index, x, z, alpha, family, suite, format, config;
  std::optional<std::size_t> n, N;
  std::optional<double> p, tolerance;
  std::optional<int> m_max, restarts, max_iterations;
  std::optional<std::uint64_t> seed;
  bool no_closed_forms = false;
};

/// Resolved job: flags override the document, which overrides defaults.
class Job {
 public:
  Job(std::string command, const Flags& f) : command_(std::move(command)), f_(f) {
    if (f.config) doc_ = load(*f.config);
    if (const char* env = std::getenv("KOETHE_SEED")) {
      char* end = nullptr;
      const auto v = std::strtoull(env, &end, 10);
      if (*env == '\0' || *end != '\0') throw ParseError("KOETHE_SEED must be a nonnegative integer");
      opt_.seed = v;
    }
    const Json& o = doc_.contains("optimizer") ? doc_["optimizer"] : doc_;
    if (o.contains("restarts")) opt_.restarts = o["restarts"].get<int>();
    if (o.contains("max_iterations")) opt_.max_iterations = o["max_iterations"].get<int>();
    if (o.contains("tolerance")) opt_.tolerance = o["tolerance"].get<double>();
    if (o.contains("seed")) opt_.seed = o["seed"].get<std::uint64_t>();
    if (o.contains("closed_forms")) opt_.closed_forms = o["closed_forms"].get<bool>();
    if (f.restarts) opt_.restarts = *f.restarts;
    if (f.max_iterations) opt_.max_iterations = *f.max_iterations;
    if (f.tolerance) opt_.tolerance = *f.tolerance;
    if (f.seed) opt_.seed = *f.seed;
    if (f.no_closed_forms) opt_.closed_forms = false;
    validate(opt_);

    const Json& s = doc_.contains("summing") ? doc_["summing"] : doc_;
    if (s.contains("m_max")) sc_.m_max = s["m_max"].get<int>();
    if (s.contains("witness_restarts")) sc_.witness_restarts = s["witness_restarts"].get<int>();
    if (s.contains("local_steps")) sc_.local_steps = s["local_steps"].get<int>();
    if (s.contains("inclusion_cap")) sc_.inclusion_cap = s["inclusion_cap"].get<double>();
    if (f.m_max) sc_.m_max = *f.m_max;
    sc_.base = opt_;
    validate(sc_);

    format_ = f.format.value_or(doc_.value("format", std::string("json")));
    if (format_ != "json" && format_ != "csv" && format_ != "plain") {
      throw ParseError("format must be json, csv or plain");
    }
  }

  const std::string& command() const { return command_; }
  const OptimizerConfig& opt() const { return opt_; }
  const SummingConfig& summing() const { return sc_; }
  const std::string& format() const { return format_; }

  bool has(const std::optional<std::string>& flag, const char* key) const {
    return flag.has_value() || doc_.contains(key);
  }

  /// Descriptor given by a flag or document field; `fallback_dim` fills an unset dimension.
  SpaceDescriptor descriptor(const std::optional<std::string>& flag, const char* key, std::size_t fallback_dim) {
    SpaceDescriptor d = [&] {
      if (flag) return parse_descriptor(*flag);
      if (!doc_.contains(key)) throw ParseError(std::string("missing --") + key);
      const Json& j = doc_[key];
      return j.is_string() ? parse_descriptor(j.get<std::string>()) : descriptor_from_json(j);
    }();
    if (d.dim == 0) d = d.with_dimension(fallback_dim);
    d.validate();
    spaces_[key] = to_json(d);
    return d;
  }

  SequenceSpace space(const std::optional<std::string>& flag, const char* key, std::size_t fallback_dim) {
    return make_space(descriptor(flag, key, fallback_dim), opt_);
  }

  /// Target space, or nullopt for the scalar field (the default).
  std::optional<SequenceSpace> target(std::size_t fallback_dim) {
    const bool scalar = !has(f_.target, "target") ||
                        (f_.target ? *f_.target == "scalar"
                                   : doc_["target"].is_string() && doc_["target"].get<std::string>() == "scalar");
    if (scalar) {
      spaces_["target"] = "scalar";
      return std::nullopt;
    }
    return space(f_.target, "target", fallback_dim);
  }

  std::vector<double> reals(const std::optional<std::string>& flag, const char* key) const {
    if (flag) return parse_reals(*flag, key);
    if (!doc_.contains(key)) throw ParseError(std::string("missing --") + key);
    return reals_from(doc_[key], key);
  }

  WitnessFamily family() const {
    WitnessFamily X;
    if (f_.family) {
      std::stringstream ss(*f_.family);
      std::string row;
      while (std::getline(ss, row, ';')) X.vectors.push_back(nonnegative(parse_reals(row, "family"), "family"));
    } else if (doc_.contains("family") && doc_["family"].is_array()) {
      for (const auto& row : doc_["family"]) X.vectors.push_back(nonnegative(reals_from(row, "family"), "family"));
    } else if (doc_.contains("family") && doc_["family"].is_string()) {
      std::stringstream ss(doc_["family"].get<std::string>());
      std::string row;
      while (std::getline(ss, row, ';')) X.vectors.push_back(nonnegative(parse_reals(row, "family"), "family"));
    } else {
      throw ParseError("missing --family");
    }
    X.validate();
    return X;
  }

  template <class T>
  T number(const std::optional<T>& flag, const char* key, std::optional<T> fallback = std::nullopt) const {
    if (flag) return *flag;
    if (doc_.contains(key)) {
      const Json& j = doc_[key];
      if constexpr (std::is_floating_point_v<T>) {
        if (j.is_string() && j.get<std::string>() == "inf") return kInf;
      }
      return j.get<T>();
    }
    if (fallback) return *fallback;
    throw ParseError(std::string("missing --") + key);
  }

  std::optional<std::string> text(const std::optional<std::string>& flag, const char* key) const {
    if (flag) return flag;
    if (doc_.contains(key)) return doc_[key].get<std::string>();
    return std::nullopt;
  }

  const Json& spaces() const { return spaces_; }

 private:
  static Json load(const std::string& source) {
    std::string text = source;
    const auto b = source.find_first_not_of(" \t\n");
    if (b == std::string::npos || source[b] != '{') {
      std::ifstream in(source);
      if (!in) throw ParseError("cannot read config document '" + source + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config document must be a JSON object");
    return doc;
  }

  std::string command_;
  const Flags& f_;
  Json doc_ = Json::object();
  OptimizerConfig opt_;
  SummingConfig sc_;
  std::string format_;
  Json spaces_ = Json::object();
};

Json config_json(const OptimizerConfig& c) {
  return Json{{"restarts", c.restarts},
              {"max_iterations", c.max_iterations},
              {"tolerance", c.tolerance},
              {"seed", c.seed},
              {"closed_forms", c.closed_forms}};
}

Json vector_json(const CoefficientVector& v) { return Json(v.values()); }

struct Result {
  NormEstimate estimate;
  Json diagnostics = Json::object();
};

void write_result(const Job& job, const Result& r, std::ostream& out) {
  const auto& e = r.estimate;
  if (job.format() == "json") {
    Json diag{{"restarts", e.restarts}, {"residual", e.residual}, {"upper_bound", e.upper_bound}};
    for (const auto& [k, v] : r.diagnostics.items()) diag[k] = v;
    Json doc{{"command", job.command()},
             {"value", e.value},
             {"kind", std::string(to_string(e.kind))},
             {"witness", vector_json(e.witness)},
             {"diagnostics", diag},
             {"seed", job.opt().seed},
             {"spaces", job.spaces()},
             {"config", config_json(job.opt())}};
    emit(doc, out, 2, 0);
    out << "\n";
  } else if (job.format() == "csv") {
    std::string w;
    for (std::size_t k = 0; k < e.witness.size(); ++k) w += (k ? ";" : "") + real(e.witness[k]);
    out << "command,value,kind,restarts,residual,upper_bound,seed,witness\n";
    out << job.command() << ',' << real(e.value) << ',' << to_string(e.kind) << ',' << e.restarts << ','
        << real(e.residual) << ',' << real(e.upper_bound) << ',' << job.opt().seed << ',' << csv_field(w) << "\n";
  } else {
    out << "value    " << real(e.value) << "\n";
    out << "kind     " << to_string(e.kind) << "\n";
    out << "witness ";
    for (double v : e.witness) out << ' ' << real(v);
    out << "\nseed     " << job.opt().seed << "\n";
  }
}

Result run_norm(Job& job, const Flags& f) {
  const auto x = nonnegative(job.reals(f.x, "x"), "x");
  const auto E = job.space(f.space, "space", x.size());
  Result r;
  if (E.predual() != nullptr) {
    r.estimate = dual_norm(*E.predual(), x, job.opt());
  } else {
    E.check_dim(x.size(), "x");
    r.estimate.value = E.norm(x);
    r.estimate.kind = EstimateKind::exact;
    r.estimate.upper_bound = r.estimate.value;
    r.estimate.witness = CoefficientVector(E.support(x.view()));
  }
  r.diagnostics["convexity_hypothesis"] = std::string(to_string(E.flags().convexity_hypothesis));
  return r;
}

Result run_dual_norm(Job& job, const Flags& f) {
  const auto z = nonnegative(job.reals(f.z, "z"), "z");
  const auto E = job.space(f.space, "space", z.size());
  return {dual_norm(E, z, job.opt())};
}

DiagonalSymbol symbol(const Job& job, const Flags& f) {
  return DiagonalSymbol::from_signed(job.reals(f.alpha, "alpha"));
}

Result run_mult_norm(Job& job, const Flags& f) {
  const auto a = symbol(job, f);
  const auto E = job.space(f.domain, "domain", a.size());
  const auto F = job.space(f.target, "target", a.size());
  return {multiplier_norm(E, F, a, job.opt())};
}

Result run_diag_norm(Job& job, const Flags& f, bool integral) {
  const auto a = symbol(job, f);
  const auto n = job.number(f.n, "n", std::optional<std::size_t>(2));
  const auto E = job.space(f.domain, "domain", a.size());
  const auto F = job.target(a.size());
  Result r;
  if (F) {
    r.estimate = integral ? diag_integral_norm(E, *F, n, a, job.opt()) : diag_sup_norm(E, *F, n, a, job.opt());
  } else {
    r.estimate = integral ? diag_integral_scalar_norm(E, n, a, job.opt()) : diag_scalar_norm(E, n, a, job.opt());
  }
  r.diagnostics["n"] = n;
  return r;
}

Result run_summing(Job& job, const Flags& f) {
  const auto a = symbol(job, f);
  const auto n = job.number(f.n, "n", std::optional<std::size_t>(1));
  const double p = job.number(f.p, "p");
  const auto& sc = job.summing();
  const auto idx = job.space(f.index, "index", static_cast<std::size_t>(sc.m_max));
  const auto domain = job.space(f.domain, "domain", a.size());
  const auto target = job.target(a.size());
  const auto rep = summing_norm_lb(idx, p, n, domain, target, a, sc);
  Result r{rep.estimate};
  r.diagnostics["m_profile"] = rep.m_profile;
  r.diagnostics["inclusion_constant"] = rep.inclusion_constant;
  r.diagnostics["weak_norms_exact"] = rep.weak_norms_exact;
  Json fam = Json::array();
  for (const auto& v : rep.best_family.vectors) fam.push_back(vector_json(v));
  r.diagnostics["best_family"] = fam;
  r.diagnostics["bounds"] = "value <= c_p * pi_(E,p)";
  return r;
}

Result run_weak_p(Job& job, const Flags& f) {
  const auto X = job.family();
  const double p = job.number(f.p, "p");
  const auto E = job.space(f.domain, "domain", X.dim());
  Result r{weak_p_norm(E, X, p, job.opt())};
  r.diagnostics["m"] = X.m();
  return r;
}

int run_verify(Job& job, const Flags& f, std::ostream& out) {
  VerifyOptions vo;
  vo.seed = job.opt().seed;
  vo.N = job.number(f.N, "N", std::optional<std::size_t>(0));
  const auto name = job.text(f.suite, "suite").value_or("all");
  const auto reports = run_suites(name, vo);
  bool all = true;
  for (const auto& r : reports) all = all && r.passed;
  if (job.format() == "json") {
    Json suites = Json::array();
    for (const auto& r : reports) {
      suites.push_back(Json{{"name", r.name},
                            {"passed", r.passed},
                            {"max_deviation", r.max_deviation},
                            {"tolerance", r.tolerance},
                            {"cases", r.cases},
                            {"seconds", r.seconds},
                            {"time_limit", r.time_limit},
                            {"detail", r.detail}});
    }
    emit(Json{{"command", "verify"}, {"passed", all}, {"seed", vo.seed}, {"N", vo.N}, {"suites", suites}}, out, 2, 0);
    out << "\n";
  } else if (job.format() == "csv") {
    out << "suite,passed,max_deviation,tolerance,cases,seconds,time_limit,detail\n";
    for (const auto& r : reports) {
      out << r.name << ',' << (r.passed ? "true" : "false") << ',' << real(r.max_deviation) << ','
          << real(r.tolerance) << ',' << r.cases << ',' << real(r.seconds) << ',' << real(r.time_limit) << ','
          << csv_field(r.detail) << "\n";
    }
  } else {
    for (const auto& r : reports) out << summary_line(r) << "\n";
  }
  return all ? kExitOk : kExitVerifyFailed;
}

void error_document(std::ostream& err, const char* type, const std::string& message) {
  emit(Json{{"error", Json{{"type", type}, {"message", message}}}}, err, 2, 0);
  err << "\n";
}

const char* error_type(const Error& e) {
  if (dynamic_cast<const ConstructionError*>(&e)) return "construction_error";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension_error";
  if (dynamic_cast<const ObjectiveError*>(&e)) return "objective_error";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition_error";
  if (dynamic_cast<const RefusalError*>(&e)) return "refusal_error";
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  return "error";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical calculus for Koethe sequence spaces and diagonal multilinear operator ideals", "koethe"};
  app.require_subcommand(1);
  Flags f;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "JSON config document (path or inline); flags override its fields");
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    sub->add_option("--seed", f.seed, "Seed (default: KOETHE_SEED or 0)");
    sub->add_option("--restarts", f.restarts, "Random restarts");
    sub->add_option("--max-iterations", f.max_iterations, "Iteration cap per ascent");
    sub->add_option("--tolerance", f.tolerance, "Relative certificate tolerance");
    sub->add_flag("--no-closed-forms", f.no_closed_forms, "Force numerical routes");
  };
  const auto space_opt = [](CLI::App* sub, const char* name, std::optional<std::string>& into, const char* help) {
    sub->add_option(name, into, help);
  };

  auto* norm = app.add_subcommand("norm", "Norm of a nonnegative vector");
  space_opt(norm, "--space", f.space, "Space descriptor (JSON or shorthand)");
  norm->add_option("--x", f.x, "Vector, comma separated");
  auto* dnorm = app.add_subcommand("dual-norm", "Koethe dual norm");
  space_opt(dnorm, "--space", f.space, "Space descriptor");
  dnorm->add_option("--z", f.z, "Vector, comma separated");
  auto* mult = app.add_subcommand("mult-norm", "Multiplier norm of a diagonal operator");
  auto* diag = app.add_subcommand("diag-norm", "Sup norm of a diagonal n-linear operator");
  auto* integ = app.add_subcommand("integral-norm", "Integral norm of a diagonal n-linear operator");
  auto* summ = app.add_subcommand("summing-estimate", "Lower bound for the (E,p)-summing norm");
  auto* weak = app.add_subcommand("weak-p", "Weak lp norm of a witness family");
  auto* verify = app.add_subcommand("verify", "Run acceptance and property suites");
  for (auto* sub : {mult, diag, integ, summ, weak}) space_opt(sub, "--domain", f.domain, "Domain space descriptor");
  for (auto* sub : {mult, diag, integ, summ}) {
    space_opt(sub, "--target", f.target, "Target space descriptor, or 'scalar'");
    sub->add_option("--alpha", f.alpha, "Diagonal symbol, comma separated (signed)");
  }
  for (auto* sub : {diag, integ, summ}) sub->add_option("--n", f.n, "Arity");
  space_opt(summ, "--index", f.index, "Index space E (dimension defaults to --m-max)");
  summ->add_option("--m-max", f.m_max, "Largest witness family size");
  for (auto* sub : {summ, weak}) sub->add_option("--p", f.p, "Exponent p");
  weak->add_option("--family", f.family, "Witness family 'a,b;c,d'");
  verify->add_option("--suite", f.suite, "Suite name or 'all'");
  verify->add_option("--N", f.N, "Largest truncation dimension");
  for (auto* sub : {norm, dnorm, mult, diag, integ, summ, weak, verify}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    error_document(err, "parse_error", e.what());
    return kExitValidation;
  }

  const auto* chosen = app.get_subcommands().front();
  try {
    Job job(chosen->get_name(), f);
    const std::string& c = job.command();
    if (c == "verify") return run_verify(job, f, out);
    Result r;
    if (c == "norm") r = run_norm(job, f);
    else if (c == "dual-norm") r = run_dual_norm(job, f);
    else if (c == "mult-norm") r = run_mult_norm(job, f);
    else if (c == "diag-norm") r = run_diag_norm(job, f, false);
    else if (c == "integral-norm") r = run_diag_norm(job, f, true);
    else if (c == "summing-estimate") r = run_summing(job, f);
    else r = run_weak_p(job, f);
    write_result(job, r, out);
    return kExitOk;
  } catch (const Error& e) {
    error_document(err, error_type(e), e.what());
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    error_document(err, "parse_error", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    error_document(err, "internal_error", e.what());
    return kExitInternal;
  }
}

}  // namespace koethe
