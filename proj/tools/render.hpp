// Output rendering for the CLI: aligned text tables for humans, CSV and
// key=value records for machines. Machine formats carry full precision so
// emitted values parse back bit-for-bit; the text table uses the 4-decimal
// probability display with a "<0.0001" floor.
#ifndef VOTECOUNT_TOOLS_RENDER_HPP
#define VOTECOUNT_TOOLS_RENDER_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace vctool {

enum class Format { table, csv, record };

inline std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_prob(double v) {
  if (v > 0.0 && v < 0.00005) return "<0.0001";
  if (v < 0.0 && v > -0.00005) return ">-0.0001";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline std::string fmt_int(long long v) { return std::to_string(v); }

struct Cell {
  std::string machine;  // csv / record value
  std::string display;  // text-table value
};

inline Cell prob_cell(double v) { return {fmt_full(v), fmt_prob(v)}; }
inline Cell full_cell(double v) { return {fmt_full(v), fmt_full(v)}; }
inline Cell int_cell(long long v) { return {fmt_int(v), fmt_int(v)}; }
inline Cell str_cell(const std::string& s) { return {s, s}; }

/// Parameters and diagnostics: short %g display, full-precision machine value.
inline Cell param_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return {fmt_full(v), buf};
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Uniform rows under a fixed header, rendered to any of the formats.
class RowSet {
 public:
  RowSet(std::string record_name, std::vector<std::string> header)
      : record_name_(std::move(record_name)), header_(std::move(header)) {}

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  std::string render(Format format, bool card_when_single = false) const {
    switch (format) {
      case Format::csv:
        return render_csv();
      case Format::record:
        return render_record();
      case Format::table:
        if (card_when_single && rows_.size() == 1) return render_card();
        return render_table();
    }
    return {};
  }

 private:
  std::string render_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(header_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(row[i].machine);
      }
      out += '\n';
    }
    return out;
  }

  std::string render_record() const {
    std::string out;
    for (const auto& row : rows_) {
      out += "record=" + record_name_ + "\n";
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += header_[i] + "=" + row[i].machine + "\n";
      }
      out += '\n';
    }
    return out;
  }

  std::string render_table() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        width[i] = std::max(width[i], row[i].display.size());
      }
    }
    std::string out;
    auto emit = [&](const std::string& text, std::size_t w, bool last) {
      out += text;
      if (!last) out.append(w - text.size() + 2, ' ');
    };
    for (std::size_t i = 0; i < header_.size(); ++i) {
      emit(header_[i], width[i], i + 1 == header_.size());
    }
    out += '\n';
    for (std::size_t i = 0; i < header_.size(); ++i) {
      emit(std::string(width[i], '-'), width[i], i + 1 == header_.size());
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        emit(row[i].display, width[i], i + 1 == row.size());
      }
      out += '\n';
    }
    return out;
  }

  std::string render_card() const {
    std::size_t w = 0;
    for (const auto& name : header_) w = std::max(w, name.size());
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      out += header_[i];
      out.append(w - header_[i].size() + 2, ' ');
      out += rows_.front()[i].display;
      out += '\n';
    }
    return out;
  }

  std::string record_name_;
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace vctool

#endif
