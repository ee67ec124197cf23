/*
 * Copyright 2026 The ELO Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "elo/comm_model.hpp"
#include "elo/comp_model.hpp"

namespace elo {

/// Every physical constant of the model in one place.
struct SystemParams {
    CompressionParams comp;
    ChannelParams chan;

    void validate() const {
        comp.validate();
        chan.validate();
    }
    bool operator==(const SystemParams&) const = default;
};

}  // namespace elo
