#include "fctx/fctx.h"

#include <cstring>
#include <exception>
#include <string>

#include "fctx/encoding.hpp"
#include "fctx/error.hpp"
#include "fctx/group.hpp"
#include "fctx/json_io.hpp"
#include "fctx/rulebases.hpp"
#include "fctx/scenario.hpp"
#include "fctx/store.hpp"

struct fctx_codebook {
  fctx::Codebook value;
};
struct fctx_rulebase {
  fctx::RuleBase value;
};
struct fctx_group {
  fctx::GroupState value;
};

namespace {

thread_local std::string g_last_error;

static_assert(static_cast<int>(fctx::ErrorCode::Internal) + 1 == FCTX_E_INTERNAL);

fctx_status status_of(fctx::ErrorCode code) { return static_cast<fctx_status>(static_cast<int>(code) + 1); }

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
fctx_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FCTX_OK;
  } catch (const fctx::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "InternalError: out of memory";
  } catch (const std::exception& e) {
    g_last_error = std::string("InternalError: ") + e.what();
  } catch (...) {
    g_last_error = "InternalError: unknown exception";
  }
  return FCTX_E_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw fctx::Error(fctx::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

fctx::Fou fou_from(const double umf[4], const double lmf[5]) {
  require(umf, "umf");
  require(lmf, "lmf");
  const fctx::Fou f{{umf[0], umf[1], umf[2], umf[3], 1.0}, {lmf[0], lmf[1], lmf[2], lmf[3], lmf[4]}};
  const auto issues = fctx::fou_validate(f);
  if (!issues.empty()) throw fctx::Error(fctx::ErrorCode::Validation, issues.front());
  return f;
}

}  // namespace

extern "C" {

const char* fctx_version(void) { return "1.0.0"; }

const char* fctx_status_name(fctx_status status) {
  if (status == FCTX_OK) return "Ok";
  if (status < FCTX_E_INVALID_ARGUMENT || status > FCTX_E_INTERNAL) return "UnknownStatus";
  return fctx::to_string(static_cast<fctx::ErrorCode>(static_cast<int>(status) - 1));
}

const char* fctx_last_error(void) { return g_last_error.c_str(); }

void fctx_string_free(char* s) { delete[] s; }

fctx_status fctx_codebook_builtin(const char* vocabulary, fctx_codebook** out) {
  return guarded([&] {
    require(vocabulary, "vocabulary");
    require(out, "out");
    const fctx::VocabularyDef* def = fctx::find_vocabulary(vocabulary);
    if (!def) throw fctx::Error(fctx::ErrorCode::InvalidArgument, std::string("unknown vocabulary '") + vocabulary + "'");
    *out = new fctx_codebook{fctx::placeholder_codebook(*def)};
  });
}

fctx_status fctx_codebook_load(const char* path, fctx_codebook** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new fctx_codebook{fctx::load_codebook(path)};
  });
}

fctx_status fctx_codebook_from_json(const char* json, fctx_codebook** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new fctx_codebook{fctx::codebook_from_json(json, "<memory>")};
  });
}

fctx_status fctx_codebook_to_json(const fctx_codebook* cb, char** out) {
  return guarded([&] {
    require(cb, "codebook");
    require(out, "out");
    *out = dup(fctx::codebook_to_json(cb->value));
  });
}

fctx_status fctx_codebook_save(const fctx_codebook* cb, const char* path) {
  return guarded([&] {
    require(cb, "codebook");
    require(path, "path");
    fctx::save_codebook(cb->value, path);
  });
}

fctx_status fctx_codebook_name(const fctx_codebook* cb, char** out) {
  return guarded([&] {
    require(cb, "codebook");
    require(out, "out");
    *out = dup(cb->value.name);
  });
}

fctx_status fctx_codebook_size(const fctx_codebook* cb, size_t* out) {
  return guarded([&] {
    require(cb, "codebook");
    require(out, "out");
    *out = cb->value.entries.size();
  });
}

void fctx_codebook_free(fctx_codebook* cb) { delete cb; }

fctx_status fctx_encode_survey_file(const char* survey_path, fctx_codebook** out, char** report_json) {
  return guarded([&] {
    require(survey_path, "survey_path");
    require(out, "out");
    const fctx::SurveySet surveys = fctx::load_surveys(survey_path);
    fctx::EncodedCodebook enc = [&] {
      const fctx::VocabularyDef* def = fctx::find_vocabulary(surveys.name);
      if (!def) return fctx::encode_codebook(surveys);
      fctx::EncodedCodebook e = fctx::encode_codebook(surveys, def->words);
      e.codebook.kind = def->kind;
      return e;
    }();
    std::string report;
    if (report_json) {
      fctx::json_io::json arr = fctx::json_io::json::array();
      for (const auto& r : enc.reports) arr.push_back(fctx::json_io::to_json(r));
      report = arr.dump(2) + "\n";
    }
    auto* handle = new fctx_codebook{std::move(enc.codebook)};
    *out = handle;
    if (report_json) *report_json = dup(report);
  });
}

fctx_status fctx_rulebase_builtin(const char* name, fctx_rulebase** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    fctx::RuleBase rb;
    if (n == "ranking") rb = fctx::member_ranking_rulebase();
    else if (n == "events") rb = fctx::event_rating_rulebase();
    else if (n == "mobility") rb = fctx::mobility_rulebase();
    else throw fctx::Error(fctx::ErrorCode::InvalidArgument, "unknown builtin rulebase '" + n + "'");
    *out = new fctx_rulebase{std::move(rb)};
  });
}

fctx_status fctx_rulebase_load(const char* path, fctx_rulebase** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    fctx::RuleBase rb = fctx::load_rulebase(path);
    const auto issues = fctx::rulebase_validate(rb);
    if (!issues.empty()) throw fctx::Error(fctx::ErrorCode::Validation, std::string(path) + ": " + issues.front());
    *out = new fctx_rulebase{std::move(rb)};
  });
}

fctx_status fctx_rulebase_to_json(const fctx_rulebase* rb, char** out) {
  return guarded([&] {
    require(rb, "rulebase");
    require(out, "out");
    *out = dup(fctx::rulebase_to_json(rb->value));
  });
}

void fctx_rulebase_free(fctx_rulebase* rb) { delete rb; }

fctx_status fctx_reason(const fctx_rulebase* rb, const fctx_codebook* const* books, size_t n_books,
                        const char* inputs_json, char** trace_json) {
  return guarded([&] {
    require(rb, "rulebase");
    require(inputs_json, "inputs_json");
    require(trace_json, "trace_json");
    if (n_books > 0) require(books, "books");
    fctx::CodebookSet set;
    for (auto& cb : fctx::default_vocabularies()) set.insert_or_assign(cb.name, std::move(cb));
    for (size_t i = 0; i < n_books; ++i) {
      require(books[i], "codebook");
      set.insert_or_assign(books[i]->value.name, books[i]->value);
    }
    const fctx::json_io::Reader reader("<inputs>");
    const fctx::Inputs inputs = fctx::json_io::inputs_from(fctx::json_io::parse(inputs_json, "<inputs>"), reader);
    try {
      const fctx::ReasoningTrace trace = fctx::reason(inputs, rb->value, set);
      *trace_json = dup(fctx::json_io::to_json(trace).dump(2) + "\n");
    } catch (const fctx::NoRuleFiredError& e) {
      *trace_json = dup(fctx::json_io::to_json(e.trace()).dump(2) + "\n");
      throw;
    }
  });
}

fctx_status fctx_group_create(const char* name, fctx_group** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new fctx_group{fctx::make_group(name)};
  });
}

fctx_status fctx_group_load(const char* config_path, fctx_group** out) {
  return guarded([&] {
    require(config_path, "config_path");
    require(out, "out");
    *out = new fctx_group{fctx::load_group(config_path)};
  });
}

fctx_status fctx_group_apply_event(fctx_group* g, const char* event_json, char** actions_json) {
  return guarded([&] {
    require(g, "group");
    require(event_json, "event_json");
    const fctx::GroupEvent ev = fctx::group_event_from_json(event_json, "<event>");
    fctx::Transition t = fctx::apply_group_event(ev, g->value);
    std::string actions = actions_json ? fctx::actions_to_json(t.actions) : std::string();
    g->value = std::move(t.state);
    if (actions_json) *actions_json = dup(actions);
  });
}

fctx_status fctx_group_apply_event_file(fctx_group* g, const char* events_path, char** actions_json) {
  return guarded([&] {
    require(g, "group");
    require(events_path, "events_path");
    fctx::SimulationResult r = fctx::simulate(g->value, fctx::load_events(events_path));
    std::string actions = actions_json ? fctx::actions_to_json(r.actions) : std::string();
    g->value = std::move(r.state);
    if (actions_json) *actions_json = dup(actions);
  });
}

fctx_status fctx_group_state_json(const fctx_group* g, char** out) {
  return guarded([&] {
    require(g, "group");
    require(out, "out");
    *out = dup(fctx::group_state_to_json(g->value));
  });
}

void fctx_group_free(fctx_group* g) { delete g; }

fctx_status fctx_scenario_run(const char* config_path, int as_json, char** report) {
  return guarded([&] {
    require(config_path, "config_path");
    require(report, "report");
    const fctx::ScenarioReport r = fctx::run_scenario(fctx::load_scenario(config_path));
    *report = dup(as_json ? r.to_json() : r.to_text());
  });
}

fctx_status fctx_centroid(const double umf[4], const double lmf[5], double* c_l, double* c_r) {
  return guarded([&] {
    require(c_l, "c_l");
    require(c_r, "c_r");
    const fctx::CentroidInterval c = fctx::km_centroid(fou_from(umf, lmf));
    *c_l = c.c_l;
    *c_r = c.c_r;
  });
}

fctx_status fctx_similarity(const double umf1[4], const double lmf1[5], const double umf2[4], const double lmf2[5],
                            double* out) {
  return guarded([&] {
    require(out, "out");
    *out = fctx::jaccard_similarity(fou_from(umf1, lmf1), fou_from(umf2, lmf2));
  });
}

}  // extern "C"
