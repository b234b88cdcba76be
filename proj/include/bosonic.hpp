// Copyright 2026 The bosonic-degeneracy Authors
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


#ifndef BOSONIC_HPP_
#define BOSONIC_HPP_

#include "bosonic/channel.hpp"
#include "bosonic/decomp.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/gridsim.hpp"
#include "bosonic/linalg.hpp"
#include "bosonic/region.hpp"
#include "bosonic/serialize.hpp"
#include "bosonic/symplectic.hpp"

#endif  // BOSONIC_HPP_
