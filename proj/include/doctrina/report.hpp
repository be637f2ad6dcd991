#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace doctrina {

/// Outcome of a single checked statement.
enum class Status : uint8_t {
  Pass,        // stated and true
  Fail,        // stated and false, witness recorded
  Vacuous,     // stated, but quantified over an empty range
  Unstateable, // the window lacks the structure to state it
  Skipped,     // budget or configuration cut it off
};

/// What the evidence for a line rests on.
enum class Basis : uint8_t {
  Window, // exhaustive over window data
  Model,  // decided by the ambient finite-set model
  Mixed,  // window where stateable, model for the rest
};

const char* to_string(Status s);
const char* to_string(Basis b);

/// One checked statement: an anchor id, what happened, and counts.
struct ReportLine {
  std::string id;      // stable machine id, e.g. "elementary.adjunction.i"
  std::string title;   // human statement
  Status status = Status::Pass;
  Basis basis = Basis::Window;
  uint64_t checked = 0;      // instances examined
  uint64_t failed = 0;       // instances that failed
  uint64_t unstateable = 0;  // instances the window could not state
  std::string witness;       // first counterexample, empty if none
  std::string note;          // coverage remarks ("sampled 1/64", ...)
  bool informational = false; // recorded but never gates a pass
};

/// Structured pass/fail evidence for a whole check or suite phase.
class Report {
 public:
  explicit Report(std::string title = "") : title_(std::move(title)) {}

  ReportLine& add(std::string id, std::string title);
  void add_section(Report sub);

  /// Convenience: one-shot line.
  ReportLine& line(std::string id, std::string title, Status st,
                   std::string witness = "", uint64_t checked = 0);

  bool passed() const; // no Fail line anywhere
  uint64_t count(Status s) const;

  const std::string& title() const { return title_; }
  const std::vector<ReportLine>& lines() const { return lines_; }
  const std::vector<Report>& sections() const { return sections_; }

  /// Deterministic plain-text rendering, one line per statement.
  void write_text(std::ostream& os, int indent = 0) const;
  std::string text() const;

 private:
  std::string title_;
  std::vector<ReportLine> lines_;
  std::vector<Report> sections_;
};

} // namespace doctrina
