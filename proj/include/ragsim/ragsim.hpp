// Copyright 2026 The ragsim Authors
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

#pragma once

#include "ragsim/bounds.hpp"
#include "ragsim/coordination.hpp"
#include "ragsim/grid.hpp"
#include "ragsim/instances.hpp"
#include "ragsim/objective.hpp"
#include "ragsim/scenario.hpp"
#include "ragsim/structure.hpp"
#include "ragsim/timing.hpp"
#include "ragsim/topology.hpp"
#include "ragsim/walkthrough.hpp"
