#pragma once

// JSON mapping of the domain types. Readers report FormatError with the
// source name and the offending field path.

#include <string>
#include <string_view>

#include "json.hpp"

#include "fctx/codebook.hpp"
#include "fctx/context.hpp"
#include "fctx/encoding.hpp"
#include "fctx/reasoner.hpp"

namespace fctx::json_io {

using nlohmann::json;

/// Parses text, mapping syntax errors to FormatError with line and column.
json parse(std::string_view text, std::string_view source);

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const;

  const json& field(const json& obj, std::string_view key, const std::string& path) const;
  const json* optional_field(const json& obj, std::string_view key, const std::string& path) const;
  double number(const json& j, const std::string& path) const;
  std::int64_t integer(const json& j, const std::string& path) const;
  std::string text(const json& j, const std::string& path) const;
  bool boolean(const json& j, const std::string& path) const;
  const json& array(const json& j, const std::string& path) const;
  const json& object(const json& j, const std::string& path) const;

  Interval interval(const json& j, const std::string& path) const;
  Trapezoid trapezoid(const json& j, bool with_height, const std::string& path) const;
  Fou fou(const json& j, const std::string& path) const;
  GeoPoint point(const json& j, const std::string& path) const;
  FuzzyTimeInterval fuzzy_time(const json& j, const std::string& path) const;
  NeedState need_state(const json& j, const std::string& path) const;

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

json to_json(const Interval& i);
json to_json(const Trapezoid& t, bool with_height);
json to_json(const Fou& f);
json to_json(const Codebook& cb);
json to_json(const SurveySet& s);
json to_json(const RuleBase& rb);
json to_json(const ReasoningTrace& t);
json to_json(const EncodingReport& r);
json to_json(const GeoPoint& p);
json to_json(const FuzzyTimeInterval& t);
json to_json(const NeedState& n);

Codebook codebook_from(const json& j, const Reader& r, const std::string& path = "$");
SurveySet surveys_from(const json& j, const Reader& r, const std::string& path = "$");
RuleBase rulebase_from(const json& j, const Reader& r, const std::string& path = "$");

/// Inputs given as {"attr": {"word": "Near"} | {"value": 2.0} |
/// {"degrees": {"Before": [lo, hi]}}}.
Inputs inputs_from(const json& j, const Reader& r, const std::string& path = "$");
json to_json(const Inputs& inputs);

}  // namespace fctx::json_io
