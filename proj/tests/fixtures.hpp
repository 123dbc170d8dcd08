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

#ifndef CATVEC_TESTS_FIXTURES_HPP_
#define CATVEC_TESTS_FIXTURES_HPP_

namespace catvec::testing_data {

// Document 6505 of the Reuters distribution, in the raw record layout.
inline constexpr const char* kSampleStory = R"(     PATTERN-ID 6505 TRAINING-SET
    18-JUN-1987 11:44:27.20
    TOPICS:     bop trade  END-TOPICS
    PLACES:     italy      END-PLACES
    PEOPLE:                END-PEOPLE
    ORGS:                  END-ORGS
    EXCHANGES:             END-EXCHANGES
    COMPANIES:             END-COMPANIES
    ITALIAN BALANCE OF PAYMENTS IN DEFICIT IN MAY
        ROME, June 18 - Italy's overall balance of payments showed
    a deficit of 3,211 billion lire in May compared with a surplus
    of 2,040 billion in April, provisional Bank of Italy figures
    how.
        The May deficit compares with a surplus of 1,555 billion
    lire in the corresponding month of 1986.
       For the first five months of 1987, the overall balance of
    payments showed a surplus of 299 billion lire against a deficit
    of 2,854 billion in the corresponding 1986 period.
     REUTER
)";

}  // namespace catvec::testing_data

#endif  // CATVEC_TESTS_FIXTURES_HPP_
