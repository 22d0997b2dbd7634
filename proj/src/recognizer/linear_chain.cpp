// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "hallucite/errors.hpp"
#include "hallucite/recognizer.hpp"

namespace hallucite {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view casing_name(CaseShape c) {
  switch (c) {
    case CaseShape::none: return "none";
    case CaseShape::lower: return "lower";
    case CaseShape::upper: return "upper";
    case CaseShape::title: return "title";
    case CaseShape::mixed: return "mixed";
  }
  return "none";
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string part;
  while (std::getline(ss, part, '\t')) parts.push_back(part);
  return parts;
}

double parse_weight(const std::string& s, const std::filesystem::path& path, int line_no) {
  try {
    std::size_t used = 0;
    const double w = std::stod(s, &used);
    if (used == s.size()) return w;
  } catch (const std::exception&) {
  }
  throw ModelUnavailable(path.string() + ":" + std::to_string(line_no) + ": bad weight '" + s + "'");
}

FieldTag parse_tag(const std::string& s, const std::filesystem::path& path, int line_no) {
  try {
    return parse_field_tag(s);
  } catch (const Error&) {
    throw ModelUnavailable(path.string() + ":" + std::to_string(line_no) + ": unknown tag '" + s + "'");
  }
}

}  // namespace

LinearChainLabeler::LinearChainLabeler(const std::filesystem::path& weights) {
  std::ifstream in(weights);
  if (!in) throw ModelUnavailable("labeler weights not found: " + weights.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto parts = split_tabs(line);
    const std::string& kind = parts[0];
    if (kind == "name" && parts.size() == 2) {
      name_ = parts[1];
    } else if (kind == "version" && parts.size() == 2) {
      version_ = parts[1];
    } else if (kind == "emit" && parts.size() == 4) {
      emit_[parts[1]].emplace_back(parse_tag(parts[2], weights, line_no),
                                   parse_weight(parts[3], weights, line_no));
    } else if (kind == "trans" && parts.size() == 4) {
      const auto a = static_cast<std::size_t>(parse_tag(parts[1], weights, line_no));
      const auto b = static_cast<std::size_t>(parse_tag(parts[2], weights, line_no));
      transition_[a][b] = parse_weight(parts[3], weights, line_no);
    } else {
      throw ModelUnavailable(weights.string() + ":" + std::to_string(line_no) + ": malformed line");
    }
  }
  if (name_.empty() || version_.empty()) {
    throw ModelUnavailable(weights.string() + ": missing name or version header");
  }
}

std::vector<std::string> LinearChainLabeler::features(std::span<const Token> tokens, std::size_t i) {
  const Token& t = tokens[i];
  const std::string w = lower(t.text);
  std::vector<std::string> f;
  f.push_back("bias");
  f.push_back("w=" + w);
  f.push_back("case=" + std::string(casing_name(t.shape.casing)));
  if (t.shape.punctuation) f.push_back("punct=" + t.text);
  if (t.shape.all_digits) f.push_back("digits=" + std::to_string(std::min<std::size_t>(t.text.size(), 5)));
  else if (t.shape.has_digit) f.push_back("hasdigit");
  if (t.shape.all_digits && t.text.size() == 4 && (w.starts_with("19") || w.starts_with("20"))) {
    f.push_back("year");
  }
  const std::size_t bucket = tokens.size() <= 1 ? 0 : (i * 4) / tokens.size();
  f.push_back("pos=" + std::to_string(bucket));
  f.push_back(i == 0 ? "prev=<s>" : "prev=" + lower(tokens[i - 1].text));
  f.push_back(i + 1 == tokens.size() ? "next=</s>" : "next=" + lower(tokens[i + 1].text));
  return f;
}

std::vector<FieldTag> LinearChainLabeler::label(std::span<const Token> tokens) const {
  const std::size_t n = tokens.size();
  if (n == 0) return {};
  constexpr std::size_t K = kFieldTagCount;
  std::vector<std::array<double, K>> emit(n);
  for (std::size_t i = 0; i < n; ++i) {
    emit[i].fill(0.0);
    for (const auto& feature : features(tokens, i)) {
      const auto it = emit_.find(feature);
      if (it == emit_.end()) continue;
      for (const auto& [tag, w] : it->second) emit[i][static_cast<std::size_t>(tag)] += w;
    }
  }

  std::vector<std::array<double, K>> score(n);
  std::vector<std::array<std::size_t, K>> back(n);
  score[0] = emit[0];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t b = 0; b < K; ++b) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t a = 0; a < K; ++a) {
        const double s = score[i - 1][a] + transition_[a][b];
        if (s > best) {
          best = s;
          arg = a;
        }
      }
      score[i][b] = best + emit[i][b];
      back[i][b] = arg;
    }
  }
  std::size_t state = 0;
  for (std::size_t k = 1; k < K; ++k) {
    if (score[n - 1][k] > score[n - 1][state]) state = k;
  }
  std::vector<FieldTag> tags(n);
  for (std::size_t i = n; i-- > 0;) {
    tags[i] = kAllFieldTags[state];
    if (i > 0) state = back[i][state];
  }
  return tags;
}

std::unique_ptr<Labeler> make_labeler(std::string_view spec) {
  if (spec.empty() || spec == "rules") return std::make_unique<RuleLabeler>();
  if (spec.starts_with("crf:")) {
    return std::make_unique<LinearChainLabeler>(std::filesystem::path(std::string(spec.substr(4))));
  }
  throw InvalidConfig("unknown labeler '" + std::string(spec) + "' (expected rules or crf:PATH)");
}

}  // namespace hallucite
