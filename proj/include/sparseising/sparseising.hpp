// Copyright 2026 Sparse Ising Machine Developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "sparseising/bounds.hpp"
#include "sparseising/embedding.hpp"
#include "sparseising/errors.hpp"
#include "sparseising/generators.hpp"
#include "sparseising/gibbs.hpp"
#include "sparseising/instances.hpp"
#include "sparseising/io.hpp"
#include "sparseising/ising.hpp"
#include "sparseising/pipeline.hpp"
#include "sparseising/rescaling.hpp"
#include "sparseising/star.hpp"
#include "sparseising/verify.hpp"
