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

#include "binlb/report.h"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace binlb {
namespace {

std::string ScalarText(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

OutputFormat ParseFormat(const std::string& name) {
  if (name == "text") return OutputFormat::kText;
  if (name == "json") return OutputFormat::kJson;
  throw std::invalid_argument("unknown format '" + name + "'");
}

int ExitCode(BoundStatus status) {
  switch (status) {
    case BoundStatus::kProven:
      return kExitProven;
    case BoundStatus::kRefuted:
      return kExitRefuted;
    case BoundStatus::kUnproven:
      return kExitUnproven;
  }
  return kExitUnproven;
}

std::string PatternText(const Pattern& p) {
  std::string out;
  for (size_t t = 0; t < p.counts.size(); ++t) {
    if (p.counts[t] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(p.counts[t]) + " s" + std::to_string(t + 1);
  }
  return out.empty() ? "empty" : out;
}

Json PatternJson(const Pattern& p) {
  Json j = Json::object();
  if (!p.name.empty()) j["name"] = p.name;
  j["counts"] = p.counts;
  return j;
}

Json LedgerLineJson(const LedgerLine& line) {
  Json j = Json::object();
  j["label"] = line.label;
  j["lhs"] = ToString(line.lhs);
  j["sense"] = line.sense;
  j["rhs"] = ToString(line.rhs);
  j["slack"] = ToString(line.sense == ">=" ? line.lhs - line.rhs : line.rhs - line.lhs);
  j["holds"] = line.holds;
  j["tight"] = line.tight;
  return j;
}

Report::Report(std::string command, int digits)
    : command_(std::move(command)), digits_(digits) {
  json_["command"] = command_;
  json_["status"] = status_;
}

void Report::SetStatus(const std::string& status, int exit_code) {
  status_ = status;
  exit_code_ = exit_code;
  json_["status"] = status;
}

void Report::SetStatus(BoundStatus status) {
  SetStatus(BoundStatusName(status), ExitCode(status));
}

void Report::Field(const std::string& key, const std::string& value) {
  json_[key] = value;
  order_.push_back({Entry::kField, key, key + ": " + value});
}

void Report::Number(const std::string& key, const Rational& value) {
  json_[key] = ToString(value);
  const std::string dec = ToDecimal(value, digits_);
  json_[key + "_decimal"] = dec;
  std::string text = key + " = " + ToString(value);
  if (value.get_den() != 1) text += " ≈ " + dec;
  order_.push_back({Entry::kField, key, text});
}

void Report::Count(const std::string& key, int64_t value) {
  json_[key] = value;
  order_.push_back({Entry::kField, key, key + ": " + std::to_string(value)});
}

void Report::Flag(const std::string& key, bool value) {
  json_[key] = value;
  order_.push_back({Entry::kField, key, key + ": " + (value ? "yes" : "no")});
}

void Report::Records(const std::string& name, const std::vector<Json>& records) {
  json_[name] = records;
  std::ostringstream text;
  text << name << ":";
  for (const Json& r : records) {
    text << "\n ";
    for (auto it = r.begin(); it != r.end(); ++it) {
      text << " " << it.key() << "=";
      if (it->is_array()) {
        text << it->dump();
      } else {
        text << ScalarText(*it);
      }
    }
  }
  order_.push_back({Entry::kRecords, name, text.str()});
}

void Report::Ledger(const std::string& name, const std::vector<LedgerLine>& lines) {
  Json arr = Json::array();
  std::ostringstream text;
  text << name << ":";
  for (const LedgerLine& l : lines) {
    arr.push_back(LedgerLineJson(l));
    const Rational slack = l.sense == ">=" ? l.lhs - l.rhs : l.rhs - l.lhs;
    text << "\n  " << (l.holds ? "[ok]   " : "[FAIL] ") << l.label << ": "
         << ToString(l.lhs) << " " << l.sense << " " << ToString(l.rhs)
         << "  (slack " << ToString(slack) << (l.tight ? ", tight" : "") << ")";
  }
  json_[name] = arr;
  order_.push_back({Entry::kLedger, name, text.str()});
}

std::string Report::Render(OutputFormat format) const {
  if (format == OutputFormat::kJson) return json_.dump(2) + "\n";
  std::ostringstream out;
  out << "command: " << command_ << "\n";
  out << "status: " << status_ << "\n";
  for (const Entry& e : order_) out << e.text << "\n";
  out << "(decimal values are rounded for display only)\n";
  return out.str();
}

}  // namespace binlb
