// Copyright 2026 The hipea Authors
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

#ifndef HIPEA_HIPEA_HPP_
#define HIPEA_HIPEA_HPP_

#include "hipea/binary.hpp"
#include "hipea/error.hpp"
#include "hipea/extraction.hpp"
#include "hipea/hhl.hpp"
#include "hipea/iteration.hpp"
#include "hipea/linalg.hpp"
#include "hipea/parallel.hpp"
#include "hipea/reconstruction.hpp"
#include "hipea/report.hpp"
#include "hipea/sampling.hpp"
#include "hipea/spectrum.hpp"
#include "hipea/statevector.hpp"

#endif  // HIPEA_HIPEA_HPP_
