// Copyright 2026 The trihybrid Authors
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

// Umbrella header for the library (the CLI lives in trihybrid/cli.hpp).

#pragma once

#include "trihybrid/anneal.hpp"
#include "trihybrid/commgraph.hpp"
#include "trihybrid/errors.hpp"
#include "trihybrid/models.hpp"
#include "trihybrid/pauli.hpp"
#include "trihybrid/qubo.hpp"
#include "trihybrid/random.hpp"
#include "trihybrid/sim.hpp"
#include "trihybrid/survey.hpp"
#include "trihybrid/version.hpp"
#include "trihybrid/vqe.hpp"
