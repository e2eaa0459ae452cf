// Copyright 2026 The qsuff Authors.
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

#ifndef QSUFF_QSUFF_HPP_
#define QSUFF_QSUFF_HPP_

#include "qsuff/errors.hpp"
#include "qsuff/linalg.hpp"
#include "qsuff/random.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/sigma_lp.hpp"
#include "qsuff/divergences.hpp"
#include "qsuff/recovery.hpp"
#include "qsuff/fixed_point.hpp"
#include "qsuff/instances.hpp"
#include "qsuff/io.hpp"
#include "qsuff/experiment.hpp"
#include "qsuff/verify.hpp"

#endif  // QSUFF_QSUFF_HPP_
