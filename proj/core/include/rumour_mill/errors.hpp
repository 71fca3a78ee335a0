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

#pragma once

#include <stdexcept>
#include <string>

namespace rumour_mill {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or data file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A lookup into loaded configuration found no entry for a genre.
class ConfigMissing : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class DocumentTooShort : public Error {
 public:
  using Error::Error;
};

class EmptyWeights : public Error {
 public:
  using Error::Error;
};

class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

class NonPositiveTemperature : public Error {
 public:
  using Error::Error;
};

class InvalidEvent : public Error {
 public:
  using Error::Error;
};

class JournalError : public Error {
 public:
  using Error::Error;
};

// Any failure of a generation backend. mill_once falls back to the cache
// on exactly this family.
class BackendError : public Error {
 public:
  using Error::Error;
};

class BackendUnavailable : public BackendError {
 public:
  enum class Reason { Timeout, ConnectionRefused, ServerError, ClientError, Transport };

  BackendUnavailable(Reason reason, const std::string& what)
      : BackendError(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Backend failed and the cache had nothing for the key.
class NoRumourAvailable : public Error {
 public:
  using Error::Error;
};

const char* to_string(BackendUnavailable::Reason reason) noexcept;

}  // namespace rumour_mill
