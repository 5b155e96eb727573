// Copyright 2026 The rrkit Authors.
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

#pragma once

#include "rrkit/automaton.hpp"
#include "rrkit/classify.hpp"
#include "rrkit/core.hpp"
#include "rrkit/cover.hpp"
#include "rrkit/operations.hpp"
#include "rrkit/regex.hpp"
#include "rrkit/rr.hpp"
#include "rrkit/text_format.hpp"
#include "rrkit/transducer.hpp"
