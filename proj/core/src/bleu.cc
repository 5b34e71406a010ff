// Copyright 2026 The relpara Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relpara/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace relpara {
namespace {

using NgramCounts = std::map<std::vector<std::string_view>, int>;

NgramCounts CountNgrams(const Tokens& tokens, int order) {
  NgramCounts counts;
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i + order <= n; ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i,
                                       tokens.begin() + i + order);
    ++counts[std::move(gram)];
  }
  return counts;
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// The first 13a rule: isolate ASCII punctuation except '\'', '-', '.', ','
// and digits/letters. Ranges: {-~, [-`, space-&, (-+, :-@ and '/'.
bool IsIsolatedPunct(unsigned char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') ||
         (c >= ' ' && c <= '&') || (c >= '(' && c <= '+') ||
         (c >= ':' && c <= '@') || c == '/';
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

Tokens Tokenize13a(std::string_view input) {
  std::string line(input);
  ReplaceAll(line, "<skipped>", "");
  ReplaceAll(line, "-\n", "");
  ReplaceAll(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    ReplaceAll(line, "&quot;", "\"");
    ReplaceAll(line, "&amp;", "&");
    ReplaceAll(line, "&lt;", "<");
    ReplaceAll(line, "&gt;", ">");
  }
  line = " " + line + " ";

  // Rule 1: pad isolated punctuation.
  std::string s1;
  s1.reserve(line.size() * 2);
  for (char c : line) {
    if (IsIsolatedPunct(static_cast<unsigned char>(c))) {
      s1 += ' ';
      s1 += c;
      s1 += ' ';
    } else {
      s1 += c;
    }
  }
  // Rule 2: ([^0-9])([\.,]) -> \1 \2 ; applied left to right without overlap.
  std::string s2;
  s2.reserve(s1.size() * 2);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (i + 1 < s1.size() && !IsDigit(s1[i]) &&
        (s1[i + 1] == '.' || s1[i + 1] == ',')) {
      s2 += s1[i];
      s2 += ' ';
      s2 += s1[i + 1];
      s2 += ' ';
      ++i;
    } else {
      s2 += s1[i];
    }
  }
  // Rule 3: ([\.,])([^0-9]) -> " \1 \2".
  std::string s3;
  s3.reserve(s2.size() * 2);
  for (std::size_t i = 0; i < s2.size(); ++i) {
    if (i + 1 < s2.size() && (s2[i] == '.' || s2[i] == ',') &&
        !IsDigit(s2[i + 1])) {
      s3 += ' ';
      s3 += s2[i];
      s3 += ' ';
      s3 += s2[i + 1];
      ++i;
    } else {
      s3 += s2[i];
    }
  }
  // Rule 4: ([0-9])(-) -> \1 \2 .
  std::string s4;
  s4.reserve(s3.size() * 2);
  for (std::size_t i = 0; i < s3.size(); ++i) {
    if (i + 1 < s3.size() && IsDigit(s3[i]) && s3[i + 1] == '-') {
      s4 += s3[i];
      s4 += " - ";
      ++i;
    } else {
      s4 += s3[i];
    }
  }

  Tokens tokens;
  std::size_t i = 0;
  while (i < s4.size()) {
    while (i < s4.size() && std::isspace(static_cast<unsigned char>(s4[i]))) ++i;
    std::size_t j = i;
    while (j < s4.size() && !std::isspace(static_cast<unsigned char>(s4[j]))) ++j;
    if (j > i) tokens.emplace_back(s4.substr(i, j - i));
    i = j;
  }
  return tokens;
}

BleuStats ComputeStats(const Tokens& hypothesis, std::span<const Tokens> refs) {
  if (refs.empty()) throw std::invalid_argument("BLEU needs a reference");
  BleuStats stats;
  stats.hyp_len = static_cast<std::int64_t>(hypothesis.size());
  std::int64_t best_len = -1;
  for (const Tokens& ref : refs) {
    const auto len = static_cast<std::int64_t>(ref.size());
    const std::int64_t diff = std::llabs(len - stats.hyp_len);
    const std::int64_t best_diff = std::llabs(best_len - stats.hyp_len);
    if (best_len < 0 || diff < best_diff || (diff == best_diff && len < best_len)) {
      best_len = len;
    }
  }
  stats.ref_len = best_len;

  for (int order = 1; order <= kBleuMaxOrder; ++order) {
    const NgramCounts hyp_counts = CountNgrams(hypothesis, order);
    NgramCounts max_ref;
    for (const Tokens& ref : refs) {
      for (const auto& [gram, n] : CountNgrams(ref, order)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, n);
      }
    }
    std::int64_t matched = 0;
    for (const auto& [gram, n] : hyp_counts) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(n, it->second);
    }
    stats.matches[order - 1] = matched;
    stats.totals[order - 1] =
        std::max<std::int64_t>(0, stats.hyp_len - order + 1);
  }
  return stats;
}

double BleuFromStats(const BleuStats& stats) {
  if (std::all_of(stats.matches.begin(), stats.matches.end(),
                  [](std::int64_t m) { return m == 0; })) {
    return 0.0;
  }
  std::array<double, kBleuMaxOrder> precisions{};
  double smooth = 1.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (stats.totals[n] == 0) break;
    if (stats.matches[n] == 0) {
      smooth *= 2.0;
      precisions[n] = 100.0 / (smooth * static_cast<double>(stats.totals[n]));
    } else {
      precisions[n] = 100.0 * static_cast<double>(stats.matches[n]) /
                      static_cast<double>(stats.totals[n]);
    }
  }
  double log_sum = 0.0;
  for (double p : precisions) {
    log_sum += p == 0.0 ? -9999999999.0 : std::log(p);
  }
  double bp = 1.0;
  if (stats.hyp_len < stats.ref_len) {
    bp = stats.hyp_len > 0
             ? std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                  static_cast<double>(stats.hyp_len))
             : 0.0;
  }
  return bp * std::exp(log_sum / kBleuMaxOrder);
}

double CorpusBleu(std::span<const std::string> candidates,
                  std::span<const std::vector<std::string>> references) {
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("BLEU candidate/reference count mismatch");
  }
  BleuStats total;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (references[i].empty()) {
      throw std::invalid_argument("BLEU needs at least one reference");
    }
    std::vector<Tokens> refs;
    refs.reserve(references[i].size());
    for (const auto& r : references[i]) refs.push_back(Tokenize13a(r));
    total += ComputeStats(Tokenize13a(candidates[i]), refs);
  }
  return BleuFromStats(total);
}

double NoPenaltyBleuFromStats(const BleuStats& stats) {
  double log_sum = 0.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    if (stats.matches[n] > 0) {
      log_sum += std::log(static_cast<double>(stats.matches[n]) /
                          static_cast<double>(stats.totals[n]));
    } else if (n == 0) {
      return 0.0;  // no unigram overlap at all
    } else {
      log_sum -= std::log(static_cast<double>(stats.totals[n]) + 1.0);
    }
  }
  return std::exp(log_sum / kBleuMaxOrder);
}

double NoPenaltyBleu(const Tokens& hypothesis, const Tokens& reference) {
  const Tokens refs[] = {reference};
  return NoPenaltyBleuFromStats(ComputeStats(hypothesis, refs));
}

}  // namespace relpara
