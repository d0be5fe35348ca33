#include "gammaseq/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "json.hpp"

namespace gammaseq::out {

Field text_field(std::string key, std::string v) {
    Field f;
    f.key = std::move(key);
    f.kind = FieldKind::text;
    f.text = std::move(v);
    return f;
}

Field int_field(std::string key, std::int64_t v) {
    Field f;
    f.key = std::move(key);
    f.kind = FieldKind::integer;
    f.i = v;
    return f;
}

Field value_field(std::string key, double v) {
    Field f;
    f.key = std::move(key);
    f.kind = FieldKind::value;
    f.d = v;
    return f;
}

Field err_field(std::string key, double v) {
    Field f;
    f.key = std::move(key);
    f.kind = FieldKind::error;
    f.d = v;
    return f;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double round_sig3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return std::strtod(buf, nullptr);
}

namespace {

std::string render_field_csv(const Field& f) {
    switch (f.kind) {
        case FieldKind::text:
            return f.text;  // keys and enum payloads only; never quoted content
        case FieldKind::integer: {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(f.i));
            return buf;
        }
        case FieldKind::value:
            return format_value(f.d);
        case FieldKind::error: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2e", f.d);
            return buf;
        }
    }
    return {};
}

void check_layout(std::span<const OutputRecord> records) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].fields.size() != records[0].fields.size() ||
            records[i].kind != records[0].kind)
            throw std::logic_error("output: records of one run must share a layout");
        for (std::size_t k = 0; k < records[i].fields.size(); ++k)
            if (records[i].fields[k].key != records[0].fields[k].key)
                throw std::logic_error("output: records of one run must share keys");
    }
}

}  // namespace

std::string to_csv(std::span<const OutputRecord> records, const std::string& meta_line) {
    check_layout(records);
    std::string out;
    if (!meta_line.empty()) {
        out += "# ";
        out += meta_line;
        out += "\n";
    }
    if (records.empty()) return out;
    out += "kind";
    for (const Field& f : records[0].fields) {
        out += ",";
        out += f.key;
    }
    out += "\n";
    for (const OutputRecord& rec : records) {
        out += rec.kind;
        for (const Field& f : rec.fields) {
            out += ",";
            out += render_field_csv(f);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(std::span<const OutputRecord> records, const std::string& meta_line) {
    check_layout(records);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const OutputRecord& rec : records) {
        nlohmann::ordered_json obj;
        obj["kind"] = rec.kind;
        for (const Field& f : rec.fields) {
            switch (f.kind) {
                case FieldKind::text:
                    obj[f.key] = f.text;
                    break;
                case FieldKind::integer:
                    obj[f.key] = f.i;
                    break;
                case FieldKind::value:
                    obj[f.key] = f.d;
                    break;
                case FieldKind::error:
                    obj[f.key] = round_sig3(f.d);
                    break;
            }
        }
        arr.push_back(std::move(obj));
    }
    if (meta_line.empty()) return arr.dump(2) + "\n";
    nlohmann::ordered_json wrapper;
    wrapper["meta"] = meta_line;
    wrapper["records"] = std::move(arr);
    return wrapper.dump(2) + "\n";
}

}  // namespace gammaseq::out
