#include "doctrina/report.hpp"

#include <ostream>
#include <sstream>

namespace doctrina {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "FAIL";
    case Status::Vacuous: return "vacuous";
    case Status::Unstateable: return "unstateable";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

const char* to_string(Basis b) {
  switch (b) {
    case Basis::Window: return "window";
    case Basis::Model: return "model";
    case Basis::Mixed: return "mixed";
  }
  return "?";
}

ReportLine& Report::add(std::string id, std::string title) {
  lines_.push_back(ReportLine{});
  lines_.back().id = std::move(id);
  lines_.back().title = std::move(title);
  return lines_.back();
}

void Report::add_section(Report sub) { sections_.push_back(std::move(sub)); }

ReportLine& Report::line(std::string id, std::string title, Status st,
                         std::string witness, uint64_t checked) {
  ReportLine& l = add(std::move(id), std::move(title));
  l.status = st;
  l.witness = std::move(witness);
  l.checked = checked;
  if (st == Status::Fail && l.failed == 0) l.failed = 1;
  return l;
}

bool Report::passed() const {
  for (const auto& l : lines_)
    if (l.status == Status::Fail && !l.informational) return false;
  for (const auto& s : sections_)
    if (!s.passed()) return false;
  return true;
}

uint64_t Report::count(Status s) const {
  uint64_t n = 0;
  for (const auto& l : lines_)
    if (l.status == s) ++n;
  for (const auto& sec : sections_) n += sec.count(s);
  return n;
}

void Report::write_text(std::ostream& os, int indent) const {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (!title_.empty()) os << pad << "== " << title_ << " ==\n";
  for (const auto& l : lines_) {
    os << pad << "[" << to_string(l.status) << "] " << l.id << ": " << l.title;
    if (l.checked) os << " (checked " << l.checked;
    if (l.checked && l.unstateable) os << ", unstateable " << l.unstateable;
    if (l.checked) os << ")";
    if (l.basis != Basis::Window) os << " {" << to_string(l.basis) << "}";
    if (!l.note.empty()) os << " [" << l.note << "]";
    if (!l.witness.empty()) os << "  witness: " << l.witness;
    os << "\n";
  }
  for (const auto& s : sections_) s.write_text(os, indent + 1);
}

std::string Report::text() const {
  std::ostringstream os;
  write_text(os);
  return os.str();
}

} // namespace doctrina
