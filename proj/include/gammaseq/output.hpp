#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gammaseq::out {

// Flat key->value payload rendered identically (same keys, same parsed
// values) as CSV and JSON.  `value` fields print with 17 significant
// digits (round-trip safe); `error` fields are rounded to 3 significant
// digits before rendering in either format.
enum class FieldKind { text, integer, value, error };

struct Field {
    std::string key;
    FieldKind kind = FieldKind::text;
    std::string text;
    std::int64_t i = 0;
    double d = 0.0;
};

Field text_field(std::string key, std::string v);
Field int_field(std::string key, std::int64_t v);
Field value_field(std::string key, double v);
Field err_field(std::string key, double v);

struct OutputRecord {
    std::string kind;  // point | sequence_row | root | suite | na
    std::vector<Field> fields;
};

// 17-significant-digit decimal rendering (%.17g).
std::string format_value(double v);
// Nearest double with 3 significant decimal digits.
double round_sig3(double v);

// CSV: comma delimiter, '.' decimal point, mandatory header row, LF
// endings.  All records of one run must share a kind/key layout.
std::string to_csv(std::span<const OutputRecord> records, const std::string& meta_line = "");
std::string to_json(std::span<const OutputRecord> records, const std::string& meta_line = "");

}  // namespace gammaseq::out
