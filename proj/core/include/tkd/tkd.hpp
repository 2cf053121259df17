// Copyright 2026 The tempkd Authors
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

#ifndef TKD_TKD_HPP
#define TKD_TKD_HPP

#include "tkd/channels.hpp"
#include "tkd/charfunc.hpp"
#include "tkd/errors.hpp"
#include "tkd/linops.hpp"
#include "tkd/measurements.hpp"
#include "tkd/oracle.hpp"
#include "tkd/process.hpp"
#include "tkd/quasiprob.hpp"
#include "tkd/random.hpp"
#include "tkd/tomography.hpp"

#endif  // TKD_TKD_HPP
