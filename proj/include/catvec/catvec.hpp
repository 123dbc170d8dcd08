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

#ifndef CATVEC_CATVEC_HPP_
#define CATVEC_CATVEC_HPP_

#include "catvec/categorizers.hpp"
#include "catvec/corpus.hpp"
#include "catvec/eval.hpp"
#include "catvec/experiment.hpp"
#include "catvec/lexicon.hpp"
#include "catvec/synth.hpp"
#include "catvec/term.hpp"
#include "catvec/vsm.hpp"

#endif  // CATVEC_CATVEC_HPP_
