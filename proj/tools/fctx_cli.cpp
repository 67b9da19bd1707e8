// fctx: command-line front end over the C interface.
//
// Exit status: 0 success, 2 input or validation error, 3 internal error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fctx/fctx.h"

namespace {

using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Failure {
  int exit_code;
};

struct CString {
  char* p = nullptr;
  ~CString() { fctx_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

[[noreturn]] void fail_input(const std::string& message) {
  std::cerr << "fctx: " << message << "\n";
  throw Failure{kExitInput};
}

void check(fctx_status s) {
  if (s == FCTX_OK) return;
  std::cerr << "fctx: " << fctx_last_error() << "\n";
  throw Failure{s == FCTX_E_INTERNAL ? kExitInternal : kExitInput};
}

std::vector<double> numbers(const std::string& text, std::size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') fail_input(std::string(what) + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.size() != n) fail_input(std::string(what) + ": expected " + std::to_string(n) + " comma-separated numbers");
  return out;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) fail_input(std::string(flag) + " expects attribute=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail_input("FormatError: " + source + ": malformed JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------

struct EncodeArgs {
  std::string survey;
  std::string out;
};

int run_encode(const EncodeArgs& a, bool as_json, bool report) {
  fctx_codebook* raw = nullptr;
  CString report_json;
  check(fctx_encode_survey_file(a.survey.c_str(), &raw, &report_json.p));
  std::unique_ptr<fctx_codebook, decltype(&fctx_codebook_free)> cb(raw, fctx_codebook_free);
  if (!a.out.empty()) check(fctx_codebook_save(cb.get(), a.out.c_str()));
  if (as_json) {
    CString text;
    check(fctx_codebook_to_json(cb.get(), &text.p));
    std::cout << text.str();
    return 0;
  }
  CString name;
  check(fctx_codebook_name(cb.get(), &name.p));
  const json reports = json::parse(report_json.str());
  std::cout << "codebook " << name.str() << ": " << reports.size() << " words";
  if (!a.out.empty()) std::cout << " -> " << a.out;
  std::cout << "\n";
  for (const auto& r : reports) {
    std::cout << "  " << r["word"].get<std::string>() << ": " << r["fou_kind"].get<std::string>()
              << " accepted=" << r["accepted"].size() << " rejected=" << r["rejected"].size() << "\n";
    if (!report) continue;
    for (const auto& x : r["rejected"]) {
      std::cout << "    rejected " << x["member"].get<std::string>() << " [" << fmt(x["lo"].get<double>()) << ", "
                << fmt(x["hi"].get<double>()) << "] " << x["stage"].get<std::string>() << ": "
                << x["reason"].get<std::string>() << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ReasonArgs {
  std::string rules;
  std::string builtin_rules;
  std::vector<std::string> codebooks;
  std::vector<std::string> words;
  std::vector<std::string> values;
  std::vector<std::string> degrees;
  std::string inputs_file;
};

json build_inputs(const ReasonArgs& a) {
  json inputs = a.inputs_file.empty() ? json::object() : parse_json(read_file(a.inputs_file), a.inputs_file);
  if (!inputs.is_object()) fail_input("FormatError: " + a.inputs_file + ": inputs must be an object");
  for (const auto& w : a.words) {
    auto [attr, word] = split_assignment(w, "--word");
    inputs[attr] = json{{"word", word}};
  }
  for (const auto& v : a.values) {
    auto [attr, x] = split_assignment(v, "--value");
    inputs[attr] = json{{"value", numbers(x, 1, "--value")[0]}};
  }
  for (const auto& d : a.degrees) {
    auto [attr, text] = split_assignment(d, "--degree");
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0) fail_input("--degree expects attribute=Word:lo[,hi], got '" + d + "'");
    const std::string word = text.substr(0, colon);
    const std::string range = text.substr(colon + 1);
    const auto parts = numbers(range, range.find(',') == std::string::npos ? 1 : 2, "--degree");
    json& slot = inputs[attr];
    if (!slot.is_object() || !slot.contains("degrees")) slot = json{{"degrees", json::object()}};
    slot["degrees"][word] = parts.size() == 1 ? json::array({parts[0], parts[0]}) : json::array({parts[0], parts[1]});
  }
  return inputs;
}

void print_trace(const json& t) {
  std::cout << "rule firings:\n";
  for (const auto& f : t["firings"]) {
    std::cout << "  " << f["rule"].get<std::string>() << " [" << fmt(f["firing"][0].get<double>()) << ", "
              << fmt(f["firing"][1].get<double>()) << "]";
    if (f.value("skipped", false)) std::cout << " skipped";
    else if (f["fired"].get<bool>()) std::cout << " fired";
    std::cout << "\n";
  }
  std::cout << "ranking:\n";
  for (const auto& r : t["ranking"])
    std::cout << "  " << r["word"].get<std::string>() << " " << fmt(r["similarity"].get<double>()) << "\n";
}

int run_reason(const ReasonArgs& a, bool as_json, bool trace) {
  if (a.rules.empty() == a.builtin_rules.empty()) fail_input("give exactly one of --rules or --builtin-rules");
  fctx_rulebase* rb_raw = nullptr;
  check(a.rules.empty() ? fctx_rulebase_builtin(a.builtin_rules.c_str(), &rb_raw)
                        : fctx_rulebase_load(a.rules.c_str(), &rb_raw));
  std::unique_ptr<fctx_rulebase, decltype(&fctx_rulebase_free)> rb(rb_raw, fctx_rulebase_free);

  std::vector<std::unique_ptr<fctx_codebook, decltype(&fctx_codebook_free)>> owned;
  std::vector<const fctx_codebook*> books;
  for (const auto& path : a.codebooks) {
    fctx_codebook* cb = nullptr;
    check(fctx_codebook_load(path.c_str(), &cb));
    owned.emplace_back(cb, fctx_codebook_free);
    books.push_back(cb);
  }
  const std::string inputs = build_inputs(a).dump();
  CString trace_json;
  const fctx_status s = fctx_reason(rb.get(), books.data(), books.size(), inputs.c_str(), &trace_json.p);
  if (s == FCTX_E_NO_RULE_FIRED && trace && trace_json.p) print_trace(json::parse(trace_json.str()));
  check(s);
  const json t = json::parse(trace_json.str());
  if (as_json) {
    std::cout << trace_json.str();
    return 0;
  }
  std::cout << t["decoded"].get<std::string>() << "\n";
  if (trace) print_trace(t);
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string group;
  std::string events;
};

int run_simulate(const SimulateArgs& a, bool as_json) {
  fctx_group* raw = nullptr;
  check(fctx_group_load(a.group.c_str(), &raw));
  std::unique_ptr<fctx_group, decltype(&fctx_group_free)> g(raw, fctx_group_free);
  CString actions;
  check(fctx_group_apply_event_file(g.get(), a.events.c_str(), &actions.p));
  CString state;
  check(fctx_group_state_json(g.get(), &state.p));
  if (as_json) {
    nlohmann::ordered_json out;
    out["actions"] = nlohmann::ordered_json::parse(actions.str());
    out["state"] = nlohmann::ordered_json::parse(state.str());
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& act : json::parse(actions.str())) {
    std::cout << "t=" << fmt(act["ts"].get<double>()) << " " << act["kind"].get<std::string>() << " "
              << act["subject"].get<std::string>();
    if (!act["word"].get<std::string>().empty()) std::cout << " word=\"" << act["word"].get<std::string>() << "\"";
    if (!act["detail"].get<std::string>().empty()) std::cout << " detail=\"" << act["detail"].get<std::string>() << "\"";
    std::cout << "\n";
  }
  const json s = json::parse(state.str());
  std::cout << "members:";
  for (const auto& m : s["members"]) std::cout << " " << m["id"].get<std::string>() << (m["pending"].get<bool>() ? "*" : "");
  std::cout << "\ncodebooks:";
  for (const auto& cb : s["codebooks"]) std::cout << " " << cb["name"].get<std::string>() << "@v" << cb["version"].get<long long>();
  std::cout << "\nclock: " << fmt(s["clock"].get<double>()) << "\n";
  return 0;
}

int run_scenario(const std::string& config, bool as_json) {
  CString report;
  check(fctx_scenario_run(config.c_str(), as_json ? 1 : 0, &report.p));
  std::cout << report.str();
  return 0;
}

struct FouArgs {
  std::string umf, lmf, umf2, lmf2;
};

int run_centroid(const FouArgs& a, bool as_json) {
  const auto u = numbers(a.umf, 4, "--umf");
  const auto l = numbers(a.lmf, 5, "--lmf");
  double cl = 0.0;
  double cr = 0.0;
  check(fctx_centroid(u.data(), l.data(), &cl, &cr));
  if (as_json) std::cout << json{{"c_l", cl}, {"c_r", cr}, {"center", (cl + cr) / 2.0}}.dump() << "\n";
  else std::cout << "c_l=" << fmt(cl) << " c_r=" << fmt(cr) << " center=" << fmt((cl + cr) / 2.0) << "\n";
  return 0;
}

int run_similarity(const FouArgs& a, bool as_json) {
  const auto u1 = numbers(a.umf, 4, "--umf1");
  const auto l1 = numbers(a.lmf, 5, "--lmf1");
  const auto u2 = numbers(a.umf2, 4, "--umf2");
  const auto l2 = numbers(a.lmf2, 5, "--lmf2");
  double s = 0.0;
  check(fctx_similarity(u1.data(), l1.data(), u2.data(), l2.data(), &s));
  if (as_json) std::cout << json{{"similarity", s}}.dump() << "\n";
  else std::cout << "similarity=" << fmt(s) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy group context reasoning toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  bool report = false;
  bool trace = false;
  unsigned seed = 42;
  app.add_flag("--json", as_json, "Emit machine-readable JSON");
  app.add_flag("--report", report, "Print per-word rejections (encode)");
  app.add_flag("--trace", trace, "Print the rule firing table (reason)");
  app.add_option("--seed", seed, "Seed for sampled computations")->capture_default_str();

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a survey file into a codebook");
  encode->add_option("survey", enc.survey, "Survey file (.survey.json)")->required();
  encode->add_option("-o,--out", enc.out, "Codebook file to write");

  ReasonArgs rsn;
  auto* reason = app.add_subcommand("reason", "Run a rulebase over word, value or degree inputs");
  reason->add_option("--rules", rsn.rules, "Rulebase file (.rules.json)");
  reason->add_option("--builtin-rules", rsn.builtin_rules, "Builtin rulebase: ranking, events or mobility");
  reason->add_option("--codebook", rsn.codebooks, "Codebook file overriding a builtin vocabulary");
  reason->add_option("--word", rsn.words, "attribute=Word");
  reason->add_option("--value", rsn.values, "attribute=x");
  reason->add_option("--degree", rsn.degrees, "attribute=Word:lo[,hi]");
  reason->add_option("--inputs", rsn.inputs_file, "JSON inputs file");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Replay a group event stream");
  simulate->add_option("--group", sim.group, "Group config file")->required();
  simulate->add_option("--events", sim.events, "JSON-lines event file")->required();

  std::string scenario_config;
  auto* scenario = app.add_subcommand("scenario", "Run the tourist-group scenario");
  scenario->add_option("config", scenario_config, "Scenario config file")->required();

  FouArgs fa;
  auto* centroid = app.add_subcommand("centroid", "Centroid interval of a trapezoidal FOU");
  centroid->add_option("--umf", fa.umf, "a,b,c,d")->required();
  centroid->add_option("--lmf", fa.lmf, "a,b,c,d,h")->required();

  FouArgs fb;
  auto* similarity = app.add_subcommand("similarity", "Jaccard similarity of two trapezoidal FOUs");
  similarity->add_option("--umf1", fb.umf, "a,b,c,d")->required();
  similarity->add_option("--lmf1", fb.lmf, "a,b,c,d,h")->required();
  similarity->add_option("--umf2", fb.umf2, "a,b,c,d")->required();
  similarity->add_option("--lmf2", fb.lmf2, "a,b,c,d,h")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*encode) return run_encode(enc, as_json, report);
    if (*reason) return run_reason(rsn, as_json, trace);
    if (*simulate) return run_simulate(sim, as_json);
    if (*scenario) return run_scenario(scenario_config, as_json);
    if (*centroid) return run_centroid(fa, as_json);
    if (*similarity) return run_similarity(fb, as_json);
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "fctx: InternalError: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
