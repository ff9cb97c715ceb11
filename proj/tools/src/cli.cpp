#include "rootstack_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "rootstack/errors.hpp"
#include "rootstack/identities.hpp"
#include "rootstack/ifunctions.hpp"
#include "rootstack/invariants.hpp"
#include "rootstack/periods.hpp"

namespace rootstack::cli {

namespace {

using nlohmann::json;

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::ifunction, "ifunction"},
    {Command::invariants, "invariants"},
    {Command::stabilize, "stabilize"},
    {Command::check_identity, "check-identity"},
    {Command::period, "period"},
    {Command::compare_periods, "compare-periods"},
    {Command::laurent_period, "laurent-period"},
};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

int bounded_int(const json& v, const std::string& field, int lo, int hi) {
  if (!v.is_number_integer()) field_error(field, "expected an integer");
  auto x = v.get<long long>();
  if (x < lo || x > hi) {
    field_error(field, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::vector<int> int_array(const json& v, const std::string& field, int lo, int hi) {
  if (!v.is_array()) field_error(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(bounded_int(v[i], field + "[" + std::to_string(i) + "]", lo, hi));
  }
  return out;
}

const json& require(const json& obj, const char* key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string join(const std::vector<int>& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string x_field(const XMonomial& x) { return x.empty() ? "-" : x_to_string(x); }

// Output under construction; tables and records share the call sites.
class Emitter {
 public:
  explicit Emitter(Format format) : format_(format) {}

  bool records() const { return format_ == Format::records; }

  void record(std::vector<std::string> fields, const Rational& value) {
    if (!records()) return;
    for (const auto& f : fields) out_ << f << '\t';
    out_ << rootstack::to_string(value) << '\n';
  }
  void flag(bool pass, std::vector<std::string> fields) {
    record(std::move(fields), pass ? Rational(1) : Rational(0));
  }
  void note(const std::string& text) {
    if (records()) {
      out_ << "# " << text << '\n';
    } else {
      out_ << text << '\n';
    }
  }
  void line(const std::string& text) {
    if (!records()) out_ << text << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  Format format_;
  std::ostringstream out_;
};

const TargetSpace& target_of(const JobConfig& config) {
  if (!config.target) throw ConfigError("this command needs a configuration with a target");
  return *config.target;
}

int default_m(const JobConfig& config) {
  if (config.m) return *config.m;
  int m = 1;
  for (const auto& beta : enumerate_curve_classes(target_of(config), config.cap)) {
    for (int d : config.divisors.pairings(beta)) m = std::max(m, d);
  }
  return m;
}

const RootData& single_roots(const JobConfig& config) {
  if (config.roots) return *config.roots;
  if (!config.root_list.empty()) return config.root_list.front();
  throw ConfigError("this series needs root orders (config \"roots\" or --roots)");
}

GradedSeries build_series(const JobConfig& config, const std::string& kind) {
  const TargetSpace& X = target_of(config);
  const DivisorArrangement& D = config.divisors;
  std::size_t n = D.size();
  if (kind == "infinity") return i_infinity_nonextended(X, D, config.cap);
  if (kind == "infinity-h0") return i_infinity_extended_h0(X, D, default_m(config), config.cap);
  if (kind == "infinity-extended") {
    return i_infinity_extended(X, D, ExtendedData::uniform(n, default_m(config), config.x_degree),
                               config.cap);
  }
  if (kind == "root") return i_root_nonextended(X, D, single_roots(config), config.cap);
  if (kind == "root-extended") {
    return i_root_extended(X, D, single_roots(config),
                           ExtendedData::uniform(n, default_m(config), config.x_degree), config.cap);
  }
  if (kind == "relative") return i_relative_smooth(X, D, config.cap);
  if (kind == "relative-h0") return i_relative_extended_h0(X, D, default_m(config), config.cap);
  if (kind == "local") return i_local(X, D, config.cap);
  throw ConfigError("unknown series kind '" + kind +
                    "' (infinity, infinity-h0, infinity-extended, root, root-extended, relative, "
                    "relative-h0, local)");
}

int run_ifunction(const JobConfig& config, Emitter& out) {
  std::string kind = config.kind.empty() ? "infinity" : config.kind;
  GradedSeries s = build_series(config, kind);
  const SeriesContext& ctx = s.context();
  out.line(kind + " I-function of " + target_of(config).name() + ", cap " +
           std::to_string(config.cap) + ", " + std::to_string(s.size()) + " terms");
  for (const auto& [key, c] : s.terms()) {
    out.line("(" + to_short_string(c) + ") " + key_to_string(key, ctx));
    out.record({"term", join(key.beta), std::to_string(key.zpow), x_field(key.xexp),
                join(key.sector), join(key.coh), join(key.lambda)},
               c);
  }
  return kPass;
}

int run_invariants(const JobConfig& config, Emitter& out) {
  std::string kind = config.kind.empty() ? "infinity-h0" : config.kind;
  GradedSeries s = build_series(config, kind);
  std::vector<DivisorClass> classes;
  for (const auto& d : config.divisors.divisors()) classes.push_back(d.cls);
  InvariantTable table = extract_invariants(s, classes);
  const AmbientRing& ring = table.ctx->ring;
  out.line("invariants from the " + kind + " I-function: " + std::to_string(table.entries.size()) +
           " entries");
  out.line("beta\tx\tinsertion\tpsi\tsector\tvalue");
  for (const auto& [key, v] : table.entries) {
    std::string insertion = ring.monomial_to_string(key.insertion);
    out.line(join(key.beta) + "\t" + x_field(key.xexp) + "\t" + insertion + "\t" +
             std::to_string(key.psi) + "\t" + join(key.sector) + "\t" + to_short_string(v));
    out.record({"invariant", join(key.beta), x_field(key.xexp), join(key.insertion),
                std::to_string(key.psi), join(key.sector)},
               v);
  }
  for (const auto& f : table.flags) out.note("skipped: " + f);
  return kPass;
}

int run_stabilize(const JobConfig& config, Emitter& out) {
  const TargetSpace& X = target_of(config);
  std::vector<RootData> roots = config.root_list;
  if (roots.empty() && config.roots) roots.push_back(*config.roots);
  if (roots.empty()) throw ConfigError("stabilize needs root orders (config \"roots\" or --roots)");
  StabilizationReport report;
  if (config.kind == "extended") {
    ExtendedData ext = ExtendedData::uniform(config.divisors.size(), default_m(config), config.x_degree);
    report = extended_stabilization_check(X, config.divisors, ext, config.cap, roots);
  } else if (config.kind.empty()) {
    report = stabilization_check(X, config.divisors, config.cap, roots);
  } else {
    throw ConfigError("unknown stabilize kind '" + config.kind + "' (extended or none)");
  }
  out.line("roots\tbeta\tresult");
  for (const auto& e : report.entries) {
    std::string line = join(e.roots) + "\t" + join(e.beta) + "\t" + (e.pass ? "pass" : "FAIL");
    if (e.mismatch) line += " at " + key_to_string(*e.mismatch, e.limit.context());
    out.line(line);
    out.flag(e.pass, {"stabilize", join(e.roots), join(e.beta)});
  }
  out.line(std::to_string(report.entries.size()) + " comparisons: " +
           (report.pass ? "all pass" : "FAILURES"));
  return report.pass ? kPass : kFail;
}

void emit_identity(const IdentityReport& r, Emitter& out) {
  std::string beta = join(r.beta);
  std::string line = r.name + "\t" + beta + "\tsign " + std::to_string(r.sign) + "\t" +
                     (r.pass ? "pass" : "FAIL");
  if (r.first_mismatch) line += " at " + key_to_string(*r.first_mismatch, r.left.context());
  out.line(line);
  out.record({"identity", r.name, beta, "sign"}, Rational(r.sign));
  out.flag(r.pass, {"identity", r.name, beta, "pass"});
  auto value = [&](const char* what, const std::optional<Rational>& v) {
    if (!v) return;
    out.line("  " + std::string(what) + " " + to_short_string(*v));
    out.record({"identity", r.name, beta, what}, *v);
  };
  value("local", r.local_point);
  value("orbifold", r.orbifold_value);
  value("factor", r.factor);
  const AmbientRing& ring = r.left.context().ring;
  for (const auto& c : r.consequences) {
    out.line("  <" + ring.monomial_to_string(c.insertion) + " psi^" + std::to_string(c.psi) +
             "> orbifold " + to_short_string(c.orbifold) + " local " + to_short_string(c.local));
    std::string ins = join(c.insertion);
    std::string psi = std::to_string(c.psi);
    out.record({"consequence", r.name, beta, ins, psi, "orbifold"}, c.orbifold);
    out.record({"consequence", r.name, beta, ins, psi, "local"}, c.local);
  }
  for (const auto& n : r.notes) out.note("  " + r.name + " " + beta + ": " + n);
}

int run_check_identity(const JobConfig& config, Emitter& out) {
  const TargetSpace& X = target_of(config);
  const DivisorArrangement& D = config.divisors;
  bool meet = intersection_nonempty(X, D, (1UL << D.size()) - 1);
  bool pass = true;
  int checked = 0;
  out.line("identity\tbeta\tsign\tresult");
  for (const auto& beta : enumerate_curve_classes(X, config.cap)) {
    auto d = D.pairings(beta);
    if (std::any_of(d.begin(), d.end(), [](int v) { return v <= 0; })) continue;
    std::vector<IdentityReport> reports;
    if (D.size() == 1) reports.push_back(check_local_relative_smooth(X, D, beta));
    if (meet) reports.push_back(check_local_orbifold_nonextended(X, D, beta));
    reports.push_back(check_local_orbifold_extended(X, D, beta));
    for (const auto& r : reports) {
      emit_identity(r, out);
      pass = pass && r.pass;
      ++checked;
    }
  }
  if (!meet) out.note("divisors have empty common intersection; non-extended identity not asserted");
  out.line(std::to_string(checked) + " identities: " + (pass ? "all pass" : "FAILURES"));
  return pass ? kPass : kFail;
}

void emit_period(const PeriodSequence& p, Emitter& out) {
  std::string kind = rootstack::to_string(p.kind);
  std::string line = kind + ":";
  for (std::size_t m = 0; m < p.coeffs.size(); ++m) {
    line += " " + to_short_string(p.coeffs[m]);
    out.record({"period", kind, std::to_string(m)}, p.coeffs[m]);
  }
  out.line(line);
}

int run_period(const JobConfig& config, Emitter& out) {
  const TargetSpace& X = target_of(config);
  PeriodSequence q = quantum_period(X, config.cap);
  emit_period(q, out);
  emit_period(regularize(q), out);
  if (config.divisors.size() > 0) {
    try {
      ClassicalPeriodReport c = classical_period_orbifold(X, config.divisors, config.cap);
      emit_period(c.period, out);
      for (const auto& t : c.skipped) out.note("contacts (" + join(t) + ") match no curve class");
    } catch (const PreconditionError& e) {
      out.note(std::string("classical period not computed: ") + e.what());
    }
  }
  return kPass;
}

int run_compare_periods(const JobConfig& config, Emitter& out) {
  PeriodComparison c = compare_periods(target_of(config), config.divisors, config.cap);
  emit_period(c.regularized, out);
  emit_period(c.classical, out);
  std::size_t n = std::min(c.regularized.coeffs.size(), c.classical.coeffs.size());
  std::size_t matching = 0;
  for (std::size_t m = 0; m < n; ++m) {
    bool same = c.regularized.coeffs[m] == c.classical.coeffs[m];
    matching += same ? 1 : 0;
    out.flag(same, {"compare", std::to_string(m)});
  }
  std::string summary = std::to_string(matching) + " of " + std::to_string(n) + " coefficients match";
  if (c.first_mismatch) summary += "; first mismatch at degree " + std::to_string(*c.first_mismatch);
  out.line(summary);
  return c.pass ? kPass : kFail;
}

int run_laurent_period(const JobConfig& config, Emitter& out) {
  if (config.laurent.empty()) throw ConfigError("laurent-period needs a polynomial (--laurent)");
  LaurentPolynomial f;
  try {
    f = LaurentPolynomial::parse(config.laurent);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("laurent polynomial: ") + e.what());
  }
  emit_period(laurent_classical_period(f, config.cap), out);
  return kPass;
}

}  // namespace

Command parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  std::string known;
  for (const auto& c : kCommands) known += std::string(known.empty() ? "" : ", ") + c.name;
  throw ConfigError("unknown command '" + std::string(name) + "' (" + known + ")");
}

std::string to_string(Command command) {
  for (const auto& c : kCommands) {
    if (c.command == command) return c.name;
  }
  return "unknown";
}

Format parse_format(std::string_view name) {
  if (name == "table") return Format::table;
  if (name == "records") return Format::records;
  throw ConfigError("unknown format '" + std::string(name) + "' (table, records)");
}

std::vector<RootData> parse_root_list(std::string_view text) {
  std::vector<RootData> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view group = text.substr(start, end - start);
    std::vector<int> values;
    std::size_t p = 0;
    while (p <= group.size()) {
      std::size_t q = group.find(',', p);
      if (q == std::string_view::npos) q = group.size();
      std::string_view item = group.substr(p, q - p);
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
        throw ConfigError("--roots: cannot read '" + std::string(item) + "' as an integer");
      }
      values.push_back(v);
      p = q + 1;
    }
    out.emplace_back(std::move(values));
    start = end + 1;
  }
  return out;
}

JobConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                      ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");

  static const char* const kKeys[] = {"target", "divisors", "roots", "cap", "m",
                                      "command", "format", "kind", "laurent"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      field_error(key, "unknown field");
    }
  }

  JobConfig config;
  const json& target = require(doc, "target", "");
  if (!target.is_object()) field_error("target", "expected an object");
  std::vector<int> factors = int_array(require(target, "factors", "target"), "target.factors", 1, 16);
  if (factors.empty()) field_error("target.factors", "needs at least one factor");
  config.target.emplace(factors);

  const json& divisors = require(doc, "divisors", "");
  if (!divisors.is_array() || divisors.empty()) field_error("divisors", "expected a nonempty array");
  std::vector<Divisor> list;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    std::string field = "divisors[" + std::to_string(i) + "]";
    const json& d = divisors[i];
    if (!d.is_object()) field_error(field, "expected an object");
    const json& name = require(d, "name", field);
    if (!name.is_string()) field_error(field + ".name", "expected a string");
    list.push_back({name.get<std::string>(),
                    int_array(require(d, "coeffs", field), field + ".coeffs", -1000, 1000)});
    if (list.back().cls.size() != factors.size()) {
      field_error(field + ".coeffs", "expected " + std::to_string(factors.size()) + " coefficients");
    }
  }
  try {
    config.divisors = DivisorArrangement(*config.target, std::move(list));
  } catch (const ConfigError& e) {
    field_error("divisors", e.what());
  }

  if (auto it = doc.find("roots"); it != doc.end()) {
    std::vector<int> roots = int_array(*it, "roots", -1000000, 1000000);
    if (roots.size() != config.divisors.size()) {
      field_error("roots", "expected one root order per divisor");
    }
    try {
      config.roots.emplace(roots);
    } catch (const ConfigError& e) {
      field_error("roots", e.what());
    }
  }
  config.cap = bounded_int(require(doc, "cap", ""), "cap", 0, kMaxCap);
  if (auto it = doc.find("m"); it != doc.end()) config.m = bounded_int(*it, "m", 1, kMaxExtended);

  auto string_field = [&](const char* key) -> std::optional<std::string> {
    auto it = doc.find(key);
    if (it == doc.end()) return std::nullopt;
    if (!it->is_string()) field_error(key, "expected a string");
    return it->get<std::string>();
  };
  if (auto c = string_field("command")) config.command = parse_command(*c);
  if (auto f = string_field("format")) config.format = parse_format(*f);
  if (auto k = string_field("kind")) config.kind = *k;
  if (auto l = string_field("laurent")) config.laurent = *l;
  return config;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Report run(const JobConfig& config) {
  using Handler = int (*)(const JobConfig&, Emitter&);
  Handler handler = nullptr;
  switch (config.command) {
    case Command::ifunction: handler = run_ifunction; break;
    case Command::invariants: handler = run_invariants; break;
    case Command::stabilize: handler = run_stabilize; break;
    case Command::check_identity: handler = run_check_identity; break;
    case Command::period: handler = run_period; break;
    case Command::compare_periods: handler = run_compare_periods; break;
    case Command::laurent_period: handler = run_laurent_period; break;
  }
  Report report;
  Emitter out(config.format);
  try {
    if (config.cap < 0 || config.cap > kMaxCap) {
      throw ConfigError("cap must lie in [0, " + std::to_string(kMaxCap) + "]");
    }
    report.status = handler(config, out);
  } catch (const MirrorMapError& e) {
    report.status = kMirrorMap;
    report.diagnostic = e.what();
  } catch (const DivisibilityError& e) {
    report.status = kDivisibility;
    report.diagnostic = std::string("divisibility failure: ") + e.what();
  } catch (const Error& e) {
    report.status = kFail;
    report.diagnostic = e.what();
  }
  report.output = out.str();
  return report;
}

std::vector<Record> parse_records(std::string_view text) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t p = 0;
    while (true) {
      std::size_t q = line.find('\t', p);
      fields.emplace_back(line.substr(p, q == std::string_view::npos ? std::string_view::npos : q - p));
      if (q == std::string_view::npos) break;
      p = q + 1;
    }
    Record r;
    try {
      r.value = parse_rational(fields.back());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("records line " + std::to_string(line_no) + ": " + e.what());
    }
    fields.pop_back();
    r.fields = std::move(fields);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rootstack::cli
