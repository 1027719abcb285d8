// Copyright 2026 The qkad developers
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

#include "qkad/ar.hpp"
#include "qkad/detector.hpp"
#include "qkad/errors.hpp"
#include "qkad/eval.hpp"
#include "qkad/feature_map.hpp"
#include "qkad/gram.hpp"
#include "qkad/io.hpp"
#include "qkad/ocsvm.hpp"
#include "qkad/rbf.hpp"
#include "qkad/reports.hpp"
#include "qkad/statevector.hpp"
#include "qkad/stats.hpp"
#include "qkad/synth.hpp"
