// Copyright 2026 The quadflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "quadflip/errors.hpp"
#include "quadflip/so3.hpp"
#include "quadflip/attitude_error.hpp"
#include "quadflip/plant.hpp"
#include "quadflip/control.hpp"
#include "quadflip/allocation.hpp"
#include "quadflip/trajectory.hpp"
#include "quadflip/sim.hpp"
#include "quadflip/scenario.hpp"
#include "quadflip/csv.hpp"
#include "quadflip/report.hpp"
