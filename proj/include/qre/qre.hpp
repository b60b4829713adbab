// Copyright 2026 The qre Authors
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

#include "qre/classical.hpp"
#include "qre/errors.hpp"
#include "qre/linalg.hpp"
#include "qre/optimize.hpp"
#include "qre/parallel.hpp"
#include "qre/presets.hpp"
#include "qre/quantum.hpp"
#include "qre/random.hpp"
#include "qre/ree.hpp"
#include "qre/rng.hpp"
#include "qre/separable.hpp"
#include "qre/unitary.hpp"
