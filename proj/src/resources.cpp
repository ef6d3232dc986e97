/*
 * Copyright 2026 The sdgpb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sdgpb/resources.hpp"

#include <stdexcept>
#include <string>

namespace sdgpb::resources {

std::string_view get(std::string_view name) {
  for (const auto& r : all()) {
    if (r.name == name) return r.data;
  }
  throw std::out_of_range("no embedded resource named " + std::string(name));
}

}  // namespace sdgpb::resources
