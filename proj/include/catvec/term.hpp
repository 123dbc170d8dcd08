// Copyright 2026 The catvec Authors.
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

#ifndef CATVEC_TERM_HPP_
#define CATVEC_TERM_HPP_

#include <string>
#include <vector>

namespace catvec {

// One or more tokens matched as a unit ("balance of payments").
using Term = std::vector<std::string>;

inline std::string term_key(const Term& t) {
  std::string key;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) key.push_back(' ');
    key += t[i];
  }
  return key;
}

}  // namespace catvec

#endif  // CATVEC_TERM_HPP_
