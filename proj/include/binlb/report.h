// Copyright 2026 The binlb Authors
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

// Verification reports rendered as plain text or JSON. JSON carries every
// rational as an exact "p/q" string and every count as an integer; decimal
// renderings are display-only companions.

#ifndef BINLB_REPORT_H_
#define BINLB_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/lp.h"
#include "binlb/model.h"

namespace binlb {

enum class OutputFormat { kText, kJson };

// Accepts "text" and "json"; throws std::invalid_argument otherwise.
OutputFormat ParseFormat(const std::string& name);

// Process exit codes.
constexpr int kExitProven = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnproven = 2;
constexpr int kExitIoError = 3;

int ExitCode(BoundStatus status);

// "7224 s1 + 43 s4", or "empty".
std::string PatternText(const Pattern& p);
Json PatternJson(const Pattern& p);
Json LedgerLineJson(const LedgerLine& line);

class Report {
 public:
  Report(std::string command, int digits);

  void SetStatus(const std::string& status, int exit_code);
  void SetStatus(BoundStatus status);
  int exit_code() const { return exit_code_; }
  const std::string& status() const { return status_; }

  void Field(const std::string& key, const std::string& value);
  void Number(const std::string& key, const Rational& value);
  void Count(const std::string& key, int64_t value);
  void Flag(const std::string& key, bool value);
  // Records are JSON objects with scalar members, printed one per line.
  void Records(const std::string& name, const std::vector<Json>& records);
  void Ledger(const std::string& name, const std::vector<LedgerLine>& lines);

  std::string Render(OutputFormat format) const;

 private:
  struct Entry {
    enum Kind { kField, kRecords, kLedger } kind;
    std::string key;
    std::string text;
  };

  std::string command_;
  int digits_;
  std::string status_ = "Unproven";
  int exit_code_ = kExitUnproven;
  Json json_;
  std::vector<Entry> order_;
};

}  // namespace binlb

#endif  // BINLB_REPORT_H_
