// Copyright 2026 The pfsim Authors
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

#include "pfsim/errors.hpp"
#include "pfsim/version.hpp"
#include "pfsim/tolerances.hpp"
#include "pfsim/bitvec.hpp"
#include "pfsim/pauli.hpp"
#include "pfsim/f2.hpp"
#include "pfsim/tableau.hpp"
#include "pfsim/circuit_io.hpp"
#include "pfsim/rng.hpp"
#include "pfsim/random_clifford.hpp"
#include "pfsim/projector.hpp"
#include "pfsim/input_model.hpp"
#include "pfsim/summation.hpp"
#include "pfsim/parallel.hpp"
#include "pfsim/dense.hpp"
#include "pfsim/fourier_sim.hpp"
#include "pfsim/oracle.hpp"
#include "pfsim/instance_io.hpp"
#include "pfsim/iqp.hpp"
