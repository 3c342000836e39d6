#include "supersol/supersol.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "classifier.hpp"
#include "config.hpp"
#include "report.hpp"
#include "runner.hpp"

using namespace supersol;

struct supersol_problem {
  ProblemSpec spec;
  std::unique_ptr<Transforms> transforms;
};

struct supersol_report {
  RunOutput output;
};

namespace {

void copy_message(char* errbuf, size_t errbuf_len, const std::string& msg) {
  if (!errbuf || errbuf_len == 0) return;
  const size_t n = std::min(errbuf_len - 1, msg.size());
  std::memcpy(errbuf, msg.data(), n);
  errbuf[n] = '\0';
}

supersol_status status_from(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ConfigError: return SUPERSOL_ERR_CONFIG;
    case ErrorCode::NotIntegrable:
    case ErrorCode::NoPositivePrimitive:
    case ErrorCode::NotApplicable:
      return SUPERSOL_ERR_UNSUPPORTED;
    case ErrorCode::DomainError:
    case ErrorCode::InvalidRadius:
    case ErrorCode::OutsideDomain:
      return SUPERSOL_ERR_ARGUMENT;
    default: return SUPERSOL_ERR_NUMERIC;
  }
}

template <typename Fn>
supersol_status guarded(Fn&& fn) {
  try {
    fn();
    return SUPERSOL_OK;
  } catch (const Error& e) {
    return status_from(e);
  } catch (const std::bad_alloc&) {
    return SUPERSOL_ERR_NUMERIC;
  } catch (const std::exception&) {
    return SUPERSOL_ERR_NUMERIC;
  }
}

}  // namespace

extern "C" {

const char* supersol_version(void) { return "1.0.0"; }

supersol_status supersol_problem_create(const char* config_text,
                                        supersol_problem** out, char* errbuf,
                                        size_t errbuf_len) {
  if (!out || !config_text) return SUPERSOL_ERR_ARGUMENT;
  *out = nullptr;
  try {
    // reuse the classify schema: problem.*, f.*, weight.*, domain.* keys
    RunConfig cfg = parse_config("classify", config_text);
    auto handle = std::make_unique<supersol_problem>();
    handle->spec = build_problem(cfg);
    handle->transforms = std::make_unique<Transforms>(handle->spec.f, handle->spec.p);
    *out = handle.release();
    return SUPERSOL_OK;
  } catch (const Error& e) {
    copy_message(errbuf, errbuf_len, e.what());
    return status_from(e);
  } catch (const std::exception& e) {
    copy_message(errbuf, errbuf_len, e.what());
    return SUPERSOL_ERR_NUMERIC;
  }
}

void supersol_problem_destroy(supersol_problem* problem) { delete problem; }

double supersol_alpha(int N, double p) {
  try {
    return alpha(N, p);
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

supersol_status supersol_big_f(const supersol_problem* pr, double t, double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] { *out = pr->transforms->F(t); });
}

supersol_status supersol_big_f_inverse(const supersol_problem* pr, double y,
                                       double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] { *out = pr->transforms->F_inverse(y); });
}

supersol_status supersol_f_norm_infinity(const supersol_problem* pr, double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] { *out = pr->transforms->F_infinity(); });
}

supersol_status supersol_big_g(const supersol_problem* pr, double t, double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] { *out = pr->transforms->G(t); });
}

supersol_status supersol_big_g_inverse(const supersol_problem* pr, double y,
                                       double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] { *out = pr->transforms->G_inverse(y); });
}

supersol_status supersol_lower_bound(const supersol_problem* pr, const double* x,
                                     double r, double* value, int* saturated) {
  if (!pr || !x || !value) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] {
    const Point pt(x, x + pr->spec.dim);
    const PointBound b = lower_bound_point(pr->spec, pt, r);
    *value = b.value;
    if (saturated) *saturated = b.saturated ? 1 : 0;
  });
}

supersol_status supersol_inf_ball_upper_bound(const supersol_problem* pr,
                                              const double* x, double r,
                                              double* value) {
  if (!pr || !x || !value) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] {
    const Point pt(x, x + pr->spec.dim);
    *value = inf_ball_upper_bound(pr->spec, pt, r);
  });
}

supersol_status supersol_deadcore_threshold(const supersol_problem* pr,
                                            double* out) {
  if (!pr || !out) return SUPERSOL_ERR_ARGUMENT;
  return guarded([&] {
    const double c = pr->spec.weight.kind() == Weight::Kind::Constant
                         ? pr->spec.weight.constant_value()
                         : 1.0;
    *out = deadcore_threshold_scaled(pr->spec.f, pr->spec.p, pr->spec.dim, c);
  });
}

supersol_status supersol_classify_json(const supersol_problem* pr, char** out_json) {
  if (!pr || !out_json) return SUPERSOL_ERR_ARGUMENT;
  *out_json = nullptr;
  return guarded([&] {
    const Classification cls = classify(pr->spec);
    JsonValue doc = JsonValue::object();
    doc.add("verdict", JsonValue::str(verdict_name(cls.verdict)));
    doc.add("rule", JsonValue::str(cls.certificate.rule));
    JsonValue values = JsonValue::object();
    for (const auto& [name, v] : cls.certificate.values)
      values.add(name, JsonValue::number(v));
    doc.add("checked_values", std::move(values));
    JsonValue notes = JsonValue::array();
    for (const auto& n : cls.certificate.notes) notes.push(JsonValue::str(n));
    doc.add("notes", std::move(notes));
    if (cls.region) doc.add("region", JsonValue::str(cls.region->describe()));
    if (cls.collar) doc.add("collar", JsonValue::number(*cls.collar));
    const std::string text = doc.dump();
    char* buf = static_cast<char*>(::operator new(text.size() + 1));
    std::memcpy(buf, text.data(), text.size() + 1);
    *out_json = buf;
  });
}

void supersol_string_free(char* s) { ::operator delete(s); }

supersol_status supersol_run(const char* command, const char* config_text,
                             supersol_report** out, char* errbuf,
                             size_t errbuf_len) {
  if (!out || !command || !config_text) return SUPERSOL_ERR_ARGUMENT;
  *out = nullptr;
  try {
    RunOutput result = run_command(command, config_text);
    if (result.exit_code == kExitBadConfig) {
      copy_message(errbuf, errbuf_len, result.error);
      return SUPERSOL_ERR_CONFIG;
    }
    if (result.exit_code == kExitNumericFailure) {
      copy_message(errbuf, errbuf_len, result.error);
      return SUPERSOL_ERR_NUMERIC;
    }
    auto handle = std::make_unique<supersol_report>();
    handle->output = std::move(result);
    const supersol_status st = handle->output.exit_code == kExitInconclusive
                                   ? SUPERSOL_INCONCLUSIVE
                                   : SUPERSOL_OK;
    *out = handle.release();
    return st;
  } catch (const std::exception& e) {
    copy_message(errbuf, errbuf_len, e.what());
    return SUPERSOL_ERR_NUMERIC;
  }
}

const char* supersol_report_json(const supersol_report* report) {
  return report ? report->output.json.c_str() : nullptr;
}

const char* supersol_report_csv(const supersol_report* report) {
  return report && report->output.csv ? report->output.csv->c_str() : nullptr;
}

const char* supersol_report_svg(const supersol_report* report) {
  return report && report->output.svg ? report->output.svg->c_str() : nullptr;
}

int supersol_report_exit_code(const supersol_report* report) {
  return report ? report->output.exit_code : kExitBadConfig;
}

void supersol_report_destroy(supersol_report* report) { delete report; }

}  // extern "C"
