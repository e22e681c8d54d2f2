// Copyright 2026 The paraprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAPROBE_RECORDS_H_
#define PARAPROBE_RECORDS_H_

#include <string>

namespace paraprobe {

// Half-open interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool Contains(double x) const { return x >= lo && x < hi; }
  bool operator==(const Interval&) const = default;
};

// Paired execution accuracy at one paraphrase rank: both accuracies are taken
// over the same `n_pairs` examples.
struct PairedEvalRecord {
  std::string model_id;
  std::string dataset;
  int rank = 0;
  int n_pairs = 0;
  int correct_orig = 0;
  int correct_para = 0;
  double acc_orig = 0.0;
  double acc_para = 0.0;
  double delta = 0.0;  // acc_para - acc_orig

  bool operator==(const PairedEvalRecord&) const = default;
};

// acc_para - acc_orig as one correctly rounded division. Subtracting the two
// rounded accuracies instead can split equal fractions (-6/9 and -4/6) by one
// ulp, which would turn a true tie into a discordant pair.
inline double PairedDelta(int correct_para, int correct_orig, int n_pairs) {
  return static_cast<double>(correct_para - correct_orig) / n_pairs;
}

// One scored paraphrase item, joined with its lexical overlap to the
// original question. Input to the Jaccard-stratified analysis.
struct StratifiedItem {
  std::string example_id;
  int rank = 0;
  double jaccard = 0.0;
  bool correct = false;
};

}  // namespace paraprobe

#endif  // PARAPROBE_RECORDS_H_
