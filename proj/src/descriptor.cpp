#include "koethe/descriptor.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "koethe/errors.hpp"

namespace koethe {

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::vector<double> weight_values(const WeightSpec& w, std::size_t n) {
  if (const auto* e = std::get_if<ExplicitWeights>(&w)) {
    if (e->values.size() < n) {
      throw ConstructionError("explicit weight list has " + std::to_string(e->values.size()) +
                              " entries but dimension " + std::to_string(n) + " is required");
    }
    return {e->values.begin(), e->values.begin() + static_cast<std::ptrdiff_t>(n)};
  }
  const double theta = std::get<PowerWeights>(w).theta;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::pow(static_cast<double>(k + 1), -theta);
  return out;
}

std::vector<double> psi_values(const WeightSpec& psi, std::size_t n) {
  if (std::holds_alternative<ExplicitWeights>(psi)) return weight_values(psi, n);
  std::vector<double> w = weight_values(psi, n);
  double acc = 0.0;
  for (double& v : w) {
    acc += v;
    v = acc;
  }
  return w;
}

SpaceDescriptor SpaceDescriptor::lp(double p, std::size_t dim) { return {LpSpec{p}, dim}; }

SpaceDescriptor SpaceDescriptor::lorentz(WeightSpec w, double p, std::size_t dim) {
  return {LorentzSpec{std::move(w), p}, dim};
}

SpaceDescriptor SpaceDescriptor::marcinkiewicz(WeightSpec psi, std::size_t dim) {
  return {MarcinkiewiczSpec{std::move(psi)}, dim};
}

SpaceDescriptor SpaceDescriptor::power(SpaceDescriptor base, double r, std::size_t dim) {
  return {PowerSpec{std::make_shared<const SpaceDescriptor>(std::move(base)), r}, dim};
}

SpaceDescriptor SpaceDescriptor::dual(SpaceDescriptor base, std::size_t dim) {
  return {DualSpec{std::make_shared<const SpaceDescriptor>(std::move(base))}, dim};
}

std::string_view SpaceDescriptor::type_name() const {
  struct Visitor {
    std::string_view operator()(const LpSpec&) const { return "lp"; }
    std::string_view operator()(const LorentzSpec&) const { return "lorentz"; }
    std::string_view operator()(const MarcinkiewiczSpec&) const { return "marcinkiewicz"; }
    std::string_view operator()(const PowerSpec&) const { return "power"; }
    std::string_view operator()(const DualSpec&) const { return "dual"; }
  };
  return std::visit(Visitor{}, kind);
}

namespace {

void validate_weight_spec(const WeightSpec& w, const char* what) {
  if (const auto* pw = std::get_if<PowerWeights>(&w)) {
    if (!(pw->theta >= 0.0) || !std::isfinite(pw->theta)) {
      throw ConstructionError(std::string(what) + " power family needs theta >= 0");
    }
  }
}

void validate_at(const SpaceDescriptor& d, std::size_t n) {
  if (n == 0) throw ConstructionError("dimension N must be a positive integer");
  if (d.dim != 0 && d.dim != n) {
    throw ConstructionError("nested descriptor dimension " + std::to_string(d.dim) +
                            " differs from enclosing dimension " + std::to_string(n));
  }
  if (const auto* lp = std::get_if<LpSpec>(&d.kind)) {
    if (!(lp->p >= 1.0)) throw ConstructionError("lp space requires p >= 1");
    return;
  }
  if (const auto* lo = std::get_if<LorentzSpec>(&d.kind)) {
    if (!(lo->p >= 1.0) || std::isinf(lo->p)) {
      throw ConstructionError("lorentz space requires 1 <= p < inf");
    }
    validate_weight_spec(lo->weights, "lorentz weights:");
    const auto w = weight_values(lo->weights, n);
    if (std::abs(w[0] - 1.0) > 1e-12) throw ConstructionError("lorentz weights require w(1) = 1");
    for (std::size_t k = 0; k < n; ++k) {
      if (!(w[k] > 0.0) || !std::isfinite(w[k])) {
        throw ConstructionError("lorentz weights must be strictly positive");
      }
      if (k > 0 && w[k] > w[k - 1]) {
        throw ConstructionError("lorentz weights must be nonincreasing (w(" + std::to_string(k + 1) +
                                ") > w(" + std::to_string(k) + "))");
      }
    }
    return;
  }
  if (const auto* ma = std::get_if<MarcinkiewiczSpec>(&d.kind)) {
    validate_weight_spec(ma->psi, "marcinkiewicz psi:");
    const auto psi = psi_values(ma->psi, n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(psi[k] > 0.0) || !std::isfinite(psi[k])) {
        throw ConstructionError("marcinkiewicz psi must be strictly positive");
      }
      if (k > 0 && !(psi[k] > psi[k - 1])) {
        throw ConstructionError("marcinkiewicz psi must be increasing");
      }
    }
    return;
  }
  if (const auto* pw = std::get_if<PowerSpec>(&d.kind)) {
    if (!(pw->r > 0.0) || !std::isfinite(pw->r)) throw ConstructionError("power requires r > 0");
    if (!pw->base) throw ConstructionError("power descriptor has no base");
    validate_at(*pw->base, n);
    return;
  }
  const auto& du = std::get<DualSpec>(d.kind);
  if (!du.base) throw ConstructionError("dual descriptor has no base");
  validate_at(*du.base, n);
}

WeightSpec truncate(const WeightSpec& w, std::size_t n) {
  if (const auto* e = std::get_if<ExplicitWeights>(&w)) {
    return ExplicitWeights{weight_values(*e, n)};
  }
  return w;
}

}  // namespace

void SpaceDescriptor::validate() const { validate_at(*this, dim); }

SpaceDescriptor SpaceDescriptor::with_dimension(std::size_t n) const {
  struct Visitor {
    std::size_t n;
    Kind operator()(const LpSpec& s) const { return s; }
    Kind operator()(const LorentzSpec& s) const { return LorentzSpec{truncate(s.weights, n), s.p}; }
    Kind operator()(const MarcinkiewiczSpec& s) const {
      if (const auto* e = std::get_if<ExplicitWeights>(&s.psi)) {
        return MarcinkiewiczSpec{ExplicitWeights{weight_values(*e, n)}};
      }
      return s;
    }
    Kind operator()(const PowerSpec& s) const {
      return PowerSpec{std::make_shared<const SpaceDescriptor>(s.base->with_dimension(n)), s.r};
    }
    Kind operator()(const DualSpec& s) const {
      return DualSpec{std::make_shared<const SpaceDescriptor>(s.base->with_dimension(n))};
    }
  };
  return {std::visit(Visitor{n}, kind), n};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::ordered_json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double exponent_from_json(const nlohmann::json& v, const char* field) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
    throw ParseError(std::string("field '") + field + "' must be a number or \"inf\"");
  }
  if (!v.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

nlohmann::ordered_json weights_json(const WeightSpec& w) {
  nlohmann::ordered_json out;
  if (const auto* e = std::get_if<ExplicitWeights>(&w)) {
    out["kind"] = "explicit";
    out["values"] = e->values;
  } else {
    out["kind"] = "power";
    out["theta"] = std::get<PowerWeights>(w).theta;
  }
  return out;
}

WeightSpec weights_from_json(const nlohmann::json& v, const char* field) {
  if (v.is_array()) return ExplicitWeights{v.get<std::vector<double>>()};
  if (!v.is_object() || !v.contains("kind")) {
    throw ParseError(std::string("field '") + field + "' must be {\"kind\": ...} or an array");
  }
  const auto kind = v.at("kind").get<std::string>();
  if (kind == "explicit") return ExplicitWeights{v.at("values").get<std::vector<double>>()};
  if (kind == "power") return PowerWeights{v.at("theta").get<double>()};
  throw ParseError(std::string("unknown weight kind '") + kind + "'");
}

}  // namespace

nlohmann::ordered_json to_json(const SpaceDescriptor& d) {
  nlohmann::ordered_json out;
  out["type"] = std::string(d.type_name());
  if (const auto* lp = std::get_if<LpSpec>(&d.kind)) {
    out["p"] = exponent_json(lp->p);
  } else if (const auto* lo = std::get_if<LorentzSpec>(&d.kind)) {
    out["p"] = exponent_json(lo->p);
    out["weights"] = weights_json(lo->weights);
  } else if (const auto* ma = std::get_if<MarcinkiewiczSpec>(&d.kind)) {
    out["psi"] = weights_json(ma->psi);
  } else if (const auto* pw = std::get_if<PowerSpec>(&d.kind)) {
    out["r"] = pw->r;
    out["base"] = to_json(*pw->base);
  } else {
    out["base"] = to_json(*std::get<DualSpec>(d.kind).base);
  }
  if (d.dim != 0) out["N"] = d.dim;
  return out;
}

SpaceDescriptor descriptor_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("space descriptor must be a JSON object");
  if (!doc.contains("type")) throw ParseError("space descriptor lacks 'type'");
  const auto type = doc.at("type").get<std::string>();
  std::size_t dim = 0;
  if (doc.contains("N")) {
    const auto& n = doc.at("N");
    if (!n.is_number_integer() || n.get<long long>() <= 0) {
      throw ParseError("field 'N' must be a positive integer");
    }
    dim = n.get<std::size_t>();
  }
  try {
    if (type == "lp") return SpaceDescriptor::lp(exponent_from_json(doc.at("p"), "p"), dim);
    if (type == "lorentz") {
      return SpaceDescriptor::lorentz(weights_from_json(doc.at("weights"), "weights"),
                                      exponent_from_json(doc.at("p"), "p"), dim);
    }
    if (type == "marcinkiewicz") {
      return SpaceDescriptor::marcinkiewicz(weights_from_json(doc.at("psi"), "psi"), dim);
    }
    if (type == "power") {
      return SpaceDescriptor::power(descriptor_from_json(doc.at("base")), doc.at("r").get<double>(),
                                    dim);
    }
    if (type == "dual") return SpaceDescriptor::dual(descriptor_from_json(doc.at("base")), dim);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed '") + type + "' descriptor: " + e.what());
  }
  throw ParseError("unknown space type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Shorthand

namespace {

struct ShorthandValue;
using ShorthandArgs = std::vector<std::pair<std::string, ShorthandValue>>;

struct ShorthandValue {
  std::variant<double, std::vector<double>, SpaceDescriptor> v;
};

class ShorthandParser {
 public:
  explicit ShorthandParser(std::string_view text) : text_(text) {}

  SpaceDescriptor parse() {
    auto d = space();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("shorthand descriptor: " + what + " at offset " + std::to_string(pos_) +
                     " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    if (text_.substr(pos_, 3) == "inf") {
      pos_ += 3;
      return kInf;
    }
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  ShorthandValue value() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<double> values;
      if (!accept(')')) {
        do {
          values.push_back(number());
        } while (accept(','));
        expect(')');
      }
      return {values};
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])) &&
        text_.substr(pos_, 3) != "inf") {
      return {space()};
    }
    return {number()};
  }

  ShorthandArgs arguments() {
    ShorthandArgs args;
    expect('(');
    if (accept(')')) return args;
    do {
      skip_ws();
      const auto save = pos_;
      std::string key = identifier();
      if (!key.empty() && accept('=')) {
        args.emplace_back(key, value());
      } else {
        pos_ = save;
        args.emplace_back("", value());
      }
    } while (accept(','));
    expect(')');
    return args;
  }

  SpaceDescriptor space() {
    const std::string name = identifier();
    if (name.empty()) fail("expected a space name");
    auto args = arguments();
    std::map<std::string, ShorthandValue> named;
    std::vector<ShorthandValue> positional;
    for (auto& [k, v] : args) {
      if (k.empty()) {
        positional.push_back(std::move(v));
      } else {
        named.emplace(k, std::move(v));
      }
    }
    auto take = [&](const std::string& key, std::size_t pos) -> std::optional<ShorthandValue> {
      if (auto it = named.find(key); it != named.end()) return it->second;
      if (pos < positional.size()) return positional[pos];
      return std::nullopt;
    };
    auto as_number = [&](const std::optional<ShorthandValue>& v, const char* key) {
      if (!v || !std::holds_alternative<double>(v->v)) fail(std::string("missing number '") + key + "'");
      return std::get<double>(v->v);
    };
    auto as_space = [&](const std::optional<ShorthandValue>& v) {
      if (!v || !std::holds_alternative<SpaceDescriptor>(v->v)) fail("missing base space");
      return std::get<SpaceDescriptor>(v->v);
    };
    auto weights = [&](const char* list_key) -> WeightSpec {
      if (auto it = named.find("theta"); it != named.end()) {
        return PowerWeights{std::get<double>(it->second.v)};
      }
      auto it = named.find(list_key);
      if (it == named.end() || !std::holds_alternative<std::vector<double>>(it->second.v)) {
        fail(std::string("expected '") + list_key + "=(...)' or 'theta=...'");
      }
      return ExplicitWeights{std::get<std::vector<double>>(it->second.v)};
    };
    std::size_t dim = 0;
    if (auto it = named.find("N"); it != named.end()) {
      const double n = std::get<double>(it->second.v);
      if (!(n >= 1) || n != std::floor(n)) fail("N must be a positive integer");
      dim = static_cast<std::size_t>(n);
    }

    if (name == "lp" || name == "l") return SpaceDescriptor::lp(as_number(take("p", 0), "p"), dim);
    if (name == "lorentz" || name == "d") {
      const double p = as_number(named.count("p") ? std::optional(named.at("p")) : std::nullopt, "p");
      return SpaceDescriptor::lorentz(weights("w"), p, dim);
    }
    if (name == "marcinkiewicz" || name == "m") {
      return SpaceDescriptor::marcinkiewicz(weights("psi"), dim);
    }
    if (name == "power") {
      return SpaceDescriptor::power(as_space(take("base", 0)), as_number(take("r", 1), "r"), dim);
    }
    if (name == "dual") return SpaceDescriptor::dual(as_space(take("base", 0)), dim);
    fail("unknown space '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string weights_shorthand(const WeightSpec& w, const char* list_key) {
  if (const auto* pw = std::get_if<PowerWeights>(&w)) return "theta=" + format_number(pw->theta);
  std::string out = std::string(list_key) + "=(";
  const auto& values = std::get<ExplicitWeights>(w).values;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ",";
    out += format_number(values[k]);
  }
  return out + ")";
}

bool same_weights(const WeightSpec& a, const WeightSpec& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ea = std::get_if<ExplicitWeights>(&a)) {
    return ea->values == std::get<ExplicitWeights>(b).values;
  }
  return std::get<PowerWeights>(a).theta == std::get<PowerWeights>(b).theta;
}

}  // namespace

SpaceDescriptor parse_descriptor(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("space descriptor is not valid JSON: ") + e.what());
    }
    return descriptor_from_json(doc);
  }
  return ShorthandParser(text).parse();
}

std::string to_shorthand(const SpaceDescriptor& d) {
  std::string dim = d.dim != 0 ? ",N=" + std::to_string(d.dim) : "";
  if (const auto* lp = std::get_if<LpSpec>(&d.kind)) return "lp(p=" + format_number(lp->p) + dim + ")";
  if (const auto* lo = std::get_if<LorentzSpec>(&d.kind)) {
    return "lorentz(" + weights_shorthand(lo->weights, "w") + ",p=" + format_number(lo->p) + dim + ")";
  }
  if (const auto* ma = std::get_if<MarcinkiewiczSpec>(&d.kind)) {
    return "marcinkiewicz(" + weights_shorthand(ma->psi, "psi") + dim + ")";
  }
  if (const auto* pw = std::get_if<PowerSpec>(&d.kind)) {
    return "power(" + to_shorthand(*pw->base) + ",r=" + format_number(pw->r) + dim + ")";
  }
  return "dual(" + to_shorthand(*std::get<DualSpec>(d.kind).base) + dim + ")";
}

bool equivalent(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (a.kind.index() != b.kind.index() || a.dim != b.dim) return false;
  if (const auto* x = std::get_if<LpSpec>(&a.kind)) return x->p == std::get<LpSpec>(b.kind).p;
  if (const auto* x = std::get_if<LorentzSpec>(&a.kind)) {
    const auto& y = std::get<LorentzSpec>(b.kind);
    return x->p == y.p && same_weights(x->weights, y.weights);
  }
  if (const auto* x = std::get_if<MarcinkiewiczSpec>(&a.kind)) {
    return same_weights(x->psi, std::get<MarcinkiewiczSpec>(b.kind).psi);
  }
  if (const auto* x = std::get_if<PowerSpec>(&a.kind)) {
    const auto& y = std::get<PowerSpec>(b.kind);
    return x->r == y.r && equivalent(*x->base, *y.base);
  }
  return equivalent(*std::get<DualSpec>(a.kind).base, *std::get<DualSpec>(b.kind).base);
}

}  // namespace koethe
