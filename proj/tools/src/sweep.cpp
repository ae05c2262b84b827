#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "bellmax/errors.hpp"
#include "bellmax/special.hpp"
#include "bellmax_cli/cli.hpp"
#include "internal.hpp"

namespace bellmax::cli {
namespace {

constexpr std::size_t kMaxGridPoints = 1'000'000;

using Json = nlohmann::json;

double number_field(const Json& j, const std::string& what) {
  if (!j.is_number()) throw UsageError(what + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw UsageError(what + " must be finite");
  return x;
}

std::vector<double> parse_axis(const std::string& name, const Json& j) {
  std::vector<double> values;
  if (j.is_number()) {
    values.push_back(number_field(j, "grid." + name));
  } else if (j.is_array()) {
    for (const auto& x : j) values.push_back(number_field(x, "grid." + name + "[]"));
  } else if (j.is_object()) {
    for (const auto& [key, _] : j.items()) {
      if (key != "from" && key != "to" && key != "step" && key != "count") {
        throw UsageError("grid." + name + ": unknown range key '" + key + "'");
      }
    }
    if (!j.contains("from") || !j.contains("to")) throw UsageError("grid." + name + ": a range needs from and to");
    const double from = number_field(j["from"], "grid." + name + ".from");
    const double to = number_field(j["to"], "grid." + name + ".to");
    if (j.contains("step") == j.contains("count")) {
      throw UsageError("grid." + name + ": a range needs exactly one of step and count");
    }
    if (to < from) throw UsageError("grid." + name + ": to < from");
    if (j.contains("step")) {
      const double step = number_field(j["step"], "grid." + name + ".step");
      if (!(step > 0.0)) throw UsageError("grid." + name + ": step must be > 0");
      const double n = std::floor((to - from) / step * (1.0 + 1e-12) + 1e-9);
      if (n >= static_cast<double>(kMaxGridPoints)) throw UsageError("grid." + name + ": too many points");
      for (int i = 0; i <= static_cast<int>(n); ++i) values.push_back(from + i * step);
    } else {
      if (!j["count"].is_number_integer() || j["count"].get<long long>() < 1) {
        throw UsageError("grid." + name + ".count must be a positive integer");
      }
      const auto count = j["count"].get<long long>();
      if (count > static_cast<long long>(kMaxGridPoints)) throw UsageError("grid." + name + ": too many points");
      for (long long i = 0; i < count; ++i) {
        values.push_back(count == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1));
      }
    }
  } else {
    throw UsageError("grid." + name + " must be a number, a list or a range object");
  }
  if (values.empty()) throw UsageError("grid." + name + " is empty");
  return values;
}

std::set<std::string> axes_for(QueryKind kind) {
  switch (kind) {
    case QueryKind::I5: return {"p", "F", "f", "L"};
    case QueryKind::Thm2: return {"f", "k"};
    case QueryKind::Thm3: return {"p", "q", "r", "F", "f", "L"};
    case QueryKind::Thm4: return {"p", "q", "F", "f"};
  }
  return {};
}

bool bool_field(const Json& j, const std::string& what) {
  if (!j.is_boolean()) throw UsageError(what + " must be true or false");
  return j.get<bool>();
}

std::string string_field(const Json& j, const std::string& what) {
  if (!j.is_string()) throw UsageError(what + " must be a string");
  return j.get<std::string>();
}

void squeeze_check(const SweepConfig& config, std::size_t index, Record& rec) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  const auto stats = detail::thm4_squeeze(rec.query.p, rec.query.q, rec.query.f, config.squeeze_trials, config.tolerance, rng);
  rec.checks["squeeze"] = {{"trials", stats.trials}, {"violations", stats.violations}, {"max_ratio", stats.max_ratio}};
  if (stats.violations > 0) rec.check_failed = true;
}

void continuity_check(const SweepConfig& config, Record& rec) {
  const auto& q = rec.query;
  const double Ls = thm3_threshold(q.p, q.F, q.f);
  if (Ls < q.f) return;
  const double at = bellman_thm3(q.p, q.q, q.r, q.F, q.f, Ls).value;
  const double above = bellman_thm3(q.p, q.q, q.r, q.F, q.f, std::nextafter(Ls, INFINITY)).value;
  const double gap = detail::relative_error(at, above);
  const bool ok = gap <= config.continuity_tolerance;
  rec.checks["continuity"] = {{"threshold", Ls}, {"rel_gap", gap}, {"pass", ok}};
  if (!ok) rec.check_failed = true;
}

Record evaluate_row(const SweepConfig& config, const BellmanQuery& query, std::size_t index) {
  Record rec = evaluate_record(query);
  if (!rec.result) return rec;
  try {
    if (config.oracle) {
      rec.oracle = detail::oracle_value(query, *rec.result);
      if (rec.oracle) {
        rec.rel_err = detail::relative_error(rec.result->value, *rec.oracle);
        rec.pass = *rec.rel_err <= config.tolerance;
      }
    }
    if (config.squeeze) squeeze_check(config, index, rec);
    if (config.continuity) continuity_check(config, rec);
  } catch (const Error& e) {
    rec.checks["error"] = e.what();
    rec.check_failed = true;
    if (config.oracle && !rec.pass) rec.pass = false;
  }
  return rec;
}

}  // namespace

SweepConfig parse_sweep_config(const Json& doc) {
  if (!doc.is_object()) throw UsageError("sweep config must be a JSON object");
  static const std::set<std::string> known = {"kind", "grid", "weak", "G", "h", "verify", "tolerances", "out", "seed"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw UsageError("sweep config: unknown key '" + key + "'");
  }

  SweepConfig c;
  c.source = doc;
  if (!doc.contains("kind")) throw UsageError("sweep config: missing kind");
  const auto kind = parse_query_kind(string_field(doc["kind"], "kind"));
  if (!kind) throw UsageError("sweep config: kind must be one of i5, thm2, thm3, thm4");
  c.kind = *kind;

  if (!doc.contains("grid") || !doc["grid"].is_object()) throw UsageError("sweep config: missing grid object");
  const auto axes = axes_for(c.kind);
  std::map<std::string, std::vector<double>*> slots = {{"p", &c.p}, {"q", &c.q}, {"r", &c.r}, {"F", &c.F},
                                                       {"f", &c.f}, {"L", &c.L}, {"k", &c.k}};
  for (const auto& [name, value] : doc["grid"].items()) {
    if (!axes.count(name)) {
      throw UsageError("grid." + name + " does not apply to " + std::string(to_string(c.kind)));
    }
    *slots.at(name) = parse_axis(name, value);
  }
  if (c.kind == QueryKind::Thm2 && c.k.empty()) c.k = {1.0};
  for (const auto& name : axes) {
    if (slots.at(name)->empty()) throw UsageError("grid." + name + " is required for " + std::string(to_string(c.kind)));
  }

  const bool thm2 = c.kind == QueryKind::Thm2;
  for (const char* key : {"weak", "G", "h"}) {
    if (doc.contains(key) && !thm2) throw UsageError(std::string(key) + " applies to thm2 only");
  }
  if (thm2) {
    if (!doc.contains("weak")) throw UsageError("thm2 needs weak");
    c.weak = parse_weak(string_field(doc["weak"], "weak"));
    if (doc.contains("G")) c.G = parse_outer(string_field(doc["G"], "G"));
    if (doc.contains("h")) c.weight_exponent = parse_weight(string_field(doc["h"], "h"));
  }

  if (doc.contains("verify")) {
    const auto& v = doc["verify"];
    if (!v.is_object()) throw UsageError("verify must be an object");
    for (const auto& [key, value] : v.items()) {
      if (key == "oracle") {
        c.oracle = bool_field(value, "verify.oracle");
      } else if (key == "continuity") {
        c.continuity = bool_field(value, "verify.continuity");
      } else if (key == "squeeze") {
        c.squeeze = bool_field(value, "verify.squeeze");
      } else if (key == "squeeze_trials") {
        if (!value.is_number_integer() || value.get<long long>() < 1 || value.get<long long>() > 1'000'000) {
          throw UsageError("verify.squeeze_trials must be an integer in [1, 1e6]");
        }
        c.squeeze_trials = value.get<int>();
      } else {
        throw UsageError("verify: unknown key '" + key + "'");
      }
    }
    if (c.continuity && c.kind != QueryKind::Thm3) throw UsageError("verify.continuity applies to thm3 only");
    if (c.squeeze && c.kind != QueryKind::Thm4) throw UsageError("verify.squeeze applies to thm4 only");
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw UsageError("tolerances must be an object");
    for (const auto& [key, value] : t.items()) {
      double* slot = key == "rel" ? &c.tolerance : key == "continuity" ? &c.continuity_tolerance : nullptr;
      if (!slot) throw UsageError("tolerances: unknown key '" + key + "'");
      *slot = number_field(value, "tolerances." + key);
      if (!(*slot > 0.0)) throw UsageError("tolerances." + key + " must be > 0");
    }
  }
  if (doc.contains("out")) c.out = string_field(doc["out"], "out");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw UsageError("seed must be a nonnegative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }

  std::size_t total = 1;
  for (const auto& [name, slot] : slots) {
    if (!slot->empty()) total *= slot->size();
    if (total > kMaxGridPoints) throw UsageError("sweep grid has more than 10^6 points");
  }
  return c;
}

std::vector<BellmanQuery> expand_grid(const SweepConfig& c) {
  // An unused axis contributes one placeholder value.
  auto axis = [](const std::vector<double>& v) { return v.empty() ? std::vector<double>{0.0} : v; };
  const auto P = axis(c.p), Q = axis(c.q), R = axis(c.r), FF = axis(c.F), ff = axis(c.f), LL = axis(c.L), K = axis(c.k);
  std::vector<BellmanQuery> out;
  for (double p : P)
    for (double q : Q)
      for (double r : R)
        for (double F : FF)
          for (double f : ff)
            for (double L : LL)
              for (double k : K) {
                BellmanQuery query;
                query.kind = c.kind;
                query.p = p;
                query.q = q;
                query.r = r;
                query.F = F;
                query.f = f;
                query.L = L;
                if (c.kind == QueryKind::Thm2) {
                  query.weak = c.weak;
                  query.spec = {c.G, c.weight_exponent, k};
                }
                out.push_back(std::move(query));
              }
  return out;
}

std::vector<Record> run_sweep(const SweepConfig& config, unsigned jobs, bool timing) {
  const auto queries = expand_grid(config);
  std::vector<Record> records(queries.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(queries.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto work = [&] {
    try {
      for (std::size_t i = next++; i < queries.size() && !failed; i = next++) {
        const auto start = std::chrono::steady_clock::now();
        records[i] = evaluate_row(config, queries[i], i);
        if (timing) {
          records[i].wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

SweepSummary summarize(const std::vector<Record>& records) {
  SweepSummary s;
  s.rows = records.size();
  for (const auto& r : records) {
    if (!r.result) {
      (r.error_kind == "numerical" ? s.error_count : s.skipped_count)++;
      continue;
    }
    if (!r.pass) {
      ++s.unchecked_count;
    } else {
      (*r.pass ? s.pass_count : s.fail_count)++;
    }
    if (r.check_failed) ++s.check_fail_count;
  }
  return s;
}

Json sweep_report(const SweepConfig& config, const std::vector<Record>& records, std::optional<double> wall_time) {
  const auto s = summarize(records);
  Json rows = Json::array();
  for (const auto& r : records) rows.push_back(to_json(r));
  QuadratureOptions quad;
  Json report = {
      {"command", "sweep"},
      {"kind", to_string(config.kind)},
      {"config", config.source},
      {"seed", config.seed},
      {"tolerances",
       {{"rel", config.tolerance},
        {"continuity", config.continuity_tolerance},
        {"quadrature_abs", quad.abs_tol},
        {"quadrature_rel", quad.rel_tol}}},
      {"versions", detail::versions()},
      {"summary",
       {{"rows", s.rows},
        {"pass_count", s.pass_count},
        {"fail_count", s.fail_count},
        {"unchecked_count", s.unchecked_count},
        {"skipped_count", s.skipped_count},
        {"error_count", s.error_count},
        {"check_fail_count", s.check_fail_count}}},
      {"rows", rows},
  };
  if (wall_time) report["wall_time_s"] = *wall_time;
  return report;
}

}  // namespace bellmax::cli
