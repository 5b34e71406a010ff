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

// BLEU variants.
//
// CorpusBleu follows sacreBLEU's default signature (nrefs:N|case:mixed|
// eff:no|tok:13a|smooth:exp): corpus-level 4-gram statistics, closest
// reference length, exponential brevity penalty and "exp" smoothing of zero
// n-gram matches.
//
// NoPenaltyBleu is the diversity variant: brevity penalty fixed to 1 and
// add-one smoothing for higher orders without matches.

#ifndef RELPARA_BLEU_H_
#define RELPARA_BLEU_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relpara/types.h"

namespace relpara {

inline constexpr int kBleuMaxOrder = 4;

struct BleuStats {
  std::array<std::int64_t, kBleuMaxOrder> matches{};
  std::array<std::int64_t, kBleuMaxOrder> totals{};
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

// mteval-v13a tokenization as implemented by sacreBLEU.
Tokens Tokenize13a(std::string_view line);

// Clipped n-gram statistics of one hypothesis against its references. The
// effective reference length is the closest one (shorter wins ties).
BleuStats ComputeStats(const Tokens& hypothesis, std::span<const Tokens> refs);

// BLEU on a 0..100 scale from accumulated statistics.
double BleuFromStats(const BleuStats& stats);

// Corpus BLEU (0..100). `references[i]` holds the references of
// `candidates[i]`; every list must be non-empty. Throws std::invalid_argument
// on size mismatch or an empty reference list.
double CorpusBleu(std::span<const std::string> candidates,
                  std::span<const std::vector<std::string>> references);

// Sentence-level no-penalty BLEU in [0, 1].
double NoPenaltyBleu(const Tokens& hypothesis, const Tokens& reference);
// Same formula over accumulated statistics, in [0, 1].
double NoPenaltyBleuFromStats(const BleuStats& stats);

}  // namespace relpara

#endif  // RELPARA_BLEU_H_
