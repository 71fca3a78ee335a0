/* Copyright 2026 The Rumour Mill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

const char* to_string(BackendUnavailable::Reason reason) noexcept {
  switch (reason) {
    case BackendUnavailable::Reason::Timeout:
      return "timeout";
    case BackendUnavailable::Reason::ConnectionRefused:
      return "connection refused";
    case BackendUnavailable::Reason::ServerError:
      return "server error";
    case BackendUnavailable::Reason::ClientError:
      return "client error";
    case BackendUnavailable::Reason::Transport:
      return "transport error";
  }
  return "unknown";
}

}  // namespace rumour_mill
