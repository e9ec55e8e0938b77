// Copyright 2026 The ToneLab Authors
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

#include "tonelab/error.hpp"

#include "tonelab/core/contour.hpp"
#include "tonelab/core/curve.hpp"
#include "tonelab/core/distance_matrix.hpp"
#include "tonelab/core/transcription.hpp"

#include "tonelab/learn/decode.hpp"
#include "tonelab/learn/loss.hpp"
#include "tonelab/learn/model.hpp"

#include "tonelab/pitch/f0.hpp"
#include "tonelab/pitch/feature.hpp"
#include "tonelab/pitch/wav.hpp"

#include "tonelab/cluster/assignment.hpp"
#include "tonelab/cluster/dbscan.hpp"
#include "tonelab/cluster/hierarchical.hpp"
#include "tonelab/cluster/mds.hpp"

#include "tonelab/dialect/analysis.hpp"
#include "tonelab/dialect/corpus.hpp"
#include "tonelab/dialect/tones.hpp"
