// Copyright 2026 The qdense Authors
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

#define QDENSE_VERSION "0.1.0"

#include "qdense/channel.hpp"
#include "qdense/coding.hpp"
#include "qdense/errors.hpp"
#include "qdense/measurement.hpp"
#include "qdense/numerics.hpp"
#include "qdense/protocol.hpp"
#include "qdense/qmat.hpp"
#include "qdense/trajectory.hpp"
#include "qdense/verification.hpp"
