// Copyright 2026 The channel_moments Authors
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

#include "channel_moments/channel.hpp"
#include "channel_moments/error.hpp"
#include "channel_moments/generators.hpp"
#include "channel_moments/haar.hpp"
#include "channel_moments/integrals.hpp"
#include "channel_moments/json_io.hpp"
#include "channel_moments/matrix.hpp"
#include "channel_moments/report.hpp"
#include "channel_moments/rng.hpp"
#include "channel_moments/tensor.hpp"
#include "channel_moments/theorems.hpp"
#include "channel_moments/twirl.hpp"
#include "channel_moments/verify.hpp"
