#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "bellmax/errors.hpp"
#include "bellmax_cli/cli.hpp"

namespace bellmax::cli {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string describe_outer(const OuterFunction& G) {
  if (G.kind == OuterFunction::Kind::Power) return "pow:" + format_number(G.r);
  return "maxpow:" + format_number(G.r) + ":" + format_number(G.floor);
}

nlohmann::json opt_json(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

}  // namespace

double parse_number(std::string_view text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(x)) {
    throw UsageError("not a finite number: '" + std::string(text) + "'");
  }
  return x;
}

std::vector<WeakConstraint> parse_weak(std::string_view text) {
  std::vector<WeakConstraint> out;
  for (auto item : split(text, ',')) {
    const auto pf = split(item, ':');
    if (pf.size() != 2) throw UsageError("weak constraint must be p:F, got '" + std::string(item) + "'");
    out.push_back({parse_number(pf[0]), parse_number(pf[1])});
  }
  return out;
}

OuterFunction parse_outer(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "pow") return OuterFunction::power(parse_number(parts[1]));
  if (parts.size() == 3 && parts[0] == "maxpow") {
    return OuterFunction::max_power(parse_number(parts[1]), parse_number(parts[2]));
  }
  throw UsageError("outer function must be pow:R or maxpow:R:L, got '" + std::string(text) + "'");
}

double parse_weight(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "pow") return parse_number(parts[1]);
  throw UsageError("weight must be pow:S, got '" + std::string(text) + "'");
}

StepFunction parse_step(std::string_view text) {
  std::vector<double> bp = {0.0};
  std::vector<double> vals;
  for (auto item : split(text, ',')) {
    const auto bv = split(item, ':');
    if (bv.size() != 2) throw UsageError("step piece must be end:value, got '" + std::string(item) + "'");
    bp.push_back(parse_number(bv[0]));
    vals.push_back(parse_number(bv[1]));
  }
  try {
    return StepFunction(std::move(bp), std::move(vals));
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("bad step function: ") + e.what());
  }
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- records

std::string_view csv_header() { return "kind,p,q,r,F,f,L,k,sigma,alpha,z,branch,value,oracle,rel_err,pass"; }

namespace {

struct Columns {
  std::optional<double> p, q, r, F, f, L, k;
};

Columns input_columns(const BellmanQuery& q) {
  switch (q.kind) {
    case QueryKind::I5:
      return {q.p, {}, {}, q.F, q.f, q.L, {}};
    case QueryKind::Thm2: {
      Columns c{{}, {}, q.spec.G.r, {}, q.f, {}, q.spec.upper};
      if (q.spec.G.kind == OuterFunction::Kind::MaxPower) c.L = q.spec.G.floor;
      return c;
    }
    case QueryKind::Thm3:
      return {q.p, q.q, q.r, q.F, q.f, q.L, {}};
    case QueryKind::Thm4:
      return {q.p, q.q, {}, q.F, q.f, {}, {}};
  }
  return {};
}

std::string cell(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

}  // namespace

std::string csv_row(const Record& rec) {
  const auto c = input_columns(rec.query);
  const BellmanResult* res = rec.result ? &*rec.result : nullptr;
  std::string row(to_string(rec.query.kind));
  for (const auto& x : {c.p, c.q, c.r, c.F, c.f, c.L, c.k}) row += "," + cell(x);
  row += "," + cell(res ? res->sigma : std::nullopt);
  row += "," + cell(res ? res->alpha : std::nullopt);
  row += "," + cell(res ? res->z : std::nullopt);
  row += "," + (res ? res->branch : "error:" + rec.error_kind);
  row += "," + cell(res ? std::optional<double>(res->value) : std::nullopt);
  row += "," + cell(rec.oracle);
  row += "," + cell(rec.rel_err);
  row += ",";
  if (rec.pass) row += *rec.pass ? "true" : "false";
  return row;
}

nlohmann::json to_json(const Record& rec) {
  const auto c = input_columns(rec.query);
  nlohmann::json inputs = nlohmann::json::object();
  const std::pair<const char*, std::optional<double>> named[] = {{"p", c.p}, {"q", c.q}, {"r", c.r}, {"F", c.F},
                                                                 {"f", c.f}, {"L", c.L}, {"k", c.k}};
  for (const auto& [name, x] : named) {
    if (x) inputs[name] = *x;
  }
  if (rec.query.kind == QueryKind::Thm2) {
    nlohmann::json weak = nlohmann::json::array();
    for (const auto& w : rec.query.weak) weak.push_back({{"p", w.p}, {"F", w.F}});
    inputs["weak"] = weak;
    inputs["G"] = describe_outer(rec.query.spec.G);
    inputs["h"] = "pow:" + format_number(rec.query.spec.weight_exponent);
  }

  nlohmann::json j = {{"kind", to_string(rec.query.kind)}, {"inputs", inputs}};
  if (rec.result) {
    const auto& r = *rec.result;
    j["value"] = opt_json(r.value);
    j["branch"] = r.branch;
    j["sigma"] = opt_json(r.sigma);
    j["alpha"] = opt_json(r.alpha);
    j["z"] = opt_json(r.z);
    j["threshold"] = opt_json(r.threshold);
    j["flags"] = r.flags;
  } else {
    j["error"] = {{"kind", rec.error_kind}, {"message", rec.error}};
  }
  j["oracle"] = opt_json(rec.oracle);
  j["rel_err"] = opt_json(rec.rel_err);
  j["pass"] = rec.pass ? nlohmann::json(*rec.pass) : nlohmann::json(nullptr);
  if (!rec.checks.empty()) j["checks"] = rec.checks;
  if (rec.wall_time) j["wall_time_s"] = *rec.wall_time;
  return j;
}

Record evaluate_record(const BellmanQuery& query) {
  Record rec;
  rec.query = query;
  try {
    rec.result = evaluate(query);
  } catch (const DomainError& e) {
    rec.error_kind = "domain";
    rec.error = e.what();
  } catch (const UnsupportedError& e) {
    rec.error_kind = "unsupported";
    rec.error = e.what();
  } catch (const PreconditionError& e) {
    rec.error_kind = "precondition";
    rec.error = e.what();
  } catch (const NumericalError& e) {
    rec.error_kind = "numerical";
    rec.error = e.what();
  }
  return rec;
}

}  // namespace bellmax::cli
