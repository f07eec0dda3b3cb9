// Copyright 2026 The fiberk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FIBERK_FIBERK_HPP_
#define FIBERK_FIBERK_HPP_

#include "fiberk/currents.hpp"
#include "fiberk/error.hpp"
#include "fiberk/fiber.hpp"
#include "fiberk/io.hpp"
#include "fiberk/kfunction.hpp"
#include "fiberk/simulate.hpp"
#include "fiberk/vec3.hpp"

#endif  // FIBERK_FIBERK_HPP_
