// Copyright 2026 The Authors.
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

#ifndef SMKP_SMKP_HPP
#define SMKP_SMKP_HPP

#include "smkp/core.hpp"
#include "smkp/enumeration.hpp"
#include "smkp/errors.hpp"
#include "smkp/exact.hpp"
#include "smkp/greedy.hpp"
#include "smkp/identical.hpp"
#include "smkp/instance.hpp"
#include "smkp/io.hpp"
#include "smkp/leveling.hpp"
#include "smkp/matroid.hpp"
#include "smkp/oracle.hpp"
#include "smkp/orchestrator.hpp"
#include "smkp/parallel.hpp"
#include "smkp/rational.hpp"
#include "smkp/small_m.hpp"

#endif  // SMKP_SMKP_HPP
