#include "ortho/report.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "num_format.hpp"
#include "ortho/errors.hpp"

namespace ortho {

namespace {

const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "?";
}

nlohmann::ordered_json config_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["suite"] = cfg.suite;
  j["domain"] = cfg.domain;
  j["codomain"] = cfg.codomain;
  j["matrix"] = cfg.matrix;
  j["relation"] = cfg.relation;
  j["seed"] = cfg.seed;
  j["sample_count"] = cfg.sample_count;
  j["tolerance"] = detail::round12(cfg.tolerance);
  return j;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

ScenarioConfig config_defaults() {
  ScenarioConfig cfg;
  if (const char* env = std::getenv("ORTHO_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument("ORTHO_SEED must be a nonnegative integer");
    cfg.seed = v;
  }
  return cfg;
}

ScenarioConfig config_from_json(const std::string& text, ScenarioConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid json: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a json object");
  try {
    if (j.contains("suite")) base.suite = j["suite"].get<std::string>();
    if (j.contains("domain")) base.domain = j["domain"].get<std::string>();
    if (j.contains("codomain")) base.codomain = j["codomain"].get<std::string>();
    if (j.contains("matrix")) base.matrix = j["matrix"].get<std::string>();
    if (j.contains("relation")) base.relation = j["relation"].get<std::string>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sample_count")) base.sample_count = j["sample_count"].get<int>();
    if (j.contains("tolerance")) base.tolerance = j["tolerance"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
  }
  return base;
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.sample_count < 1)
    throw std::invalid_argument("config: sample_count must be >= 1");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be > 0");
}

int ReportDocument::failed_count() const {
  int n = 0;
  for (const CheckRecord& c : checks)
    if (c.status == CheckStatus::Fail) ++n;
  return n;
}

std::string to_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["suite"] = doc.suite;
  j["anchor"] = doc.anchor;
  j["version"] = doc.version;
  j["config"] = config_json(doc.config);
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckRecord& c : doc.checks) {
    nlohmann::ordered_json r;
    r["name"] = c.name;
    r["status"] = status_text(c.status);
    if (c.measured)
      r["measured"] = detail::round12(*c.measured);
    else
      r["measured"] = nullptr;
    if (c.bound)
      r["bound"] = detail::round12(*c.bound);
    else
      r["bound"] = nullptr;
    r["witness"] = c.witness;
    j["checks"].push_back(std::move(r));
  }
  j["failed"] = doc.failed_count();
  j["elapsed_ms"] = detail::round12(doc.elapsed_ms);
  return j.dump(2) + "\n";
}

std::string to_csv(const ReportDocument& doc) {
  std::string out = "suite,check,status,measured,bound,witness\n";
  for (const CheckRecord& c : doc.checks) {
    out += csv_quote(doc.suite);
    out += ',';
    out += csv_quote(c.name);
    out += ',';
    out += status_text(c.status);
    out += ',';
    if (c.measured) out += detail::format_number(detail::round12(*c.measured));
    out += ',';
    if (c.bound) out += detail::format_number(detail::round12(*c.bound));
    out += ',';
    out += csv_quote(c.witness);
    out += '\n';
  }
  return out;
}

void emit_report(const ReportDocument& doc, const std::string& format,
                 const std::string& path) {
  std::string body;
  if (format == "json")
    body = to_json(doc);
  else if (format == "csv")
    body = to_csv(doc);
  else
    throw std::invalid_argument("unknown report format: '" + format + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw io_error("failed writing report to '" + path + "'");
}

}  // namespace ortho
