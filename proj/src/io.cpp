// Copyright 2026 The memslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memslab/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <locale>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace memslab {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

template <typename Int> Int parse_int(std::string_view text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("malformed integer '" + std::string(text) + "'");
    }
    return v;
}

// Reads the header, checks it, then hands each data line's fields to `row`.
template <typename RowFn>
void for_each_csv_row(std::istream &is, std::string_view expected_header, std::size_t columns, RowFn &&row) {
    std::string line;
    if (!std::getline(is, line) || strip_cr(line) != expected_header) {
        throw std::runtime_error("unexpected CSV header; expected '" + std::string(expected_header) + "'");
    }
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string_view view = strip_cr(line);
        if (view.empty()) {
            continue;
        }
        const auto fields = split_fields(view);
        if (fields.size() != columns) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                     " fields, expected " + std::to_string(columns));
        }
        row(fields);
    }
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    std::string s(buf, ptr);
    if (s == "-0") {
        s = "0";
    }
    return s;
}

double parse_number(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("malformed number '" + std::string(text) + "'");
    }
    return v;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << kSweepHeader << '\n';
    for (const SweepRow &r : rows) {
        os << r.family << ',' << format_number(r.p) << ',' << format_number(r.s_l) << ',' << format_number(r.c) << ','
           << format_number(r.c_star) << ',' << format_number(r.f) << ',' << format_number(r.b) << ',' << r.rank
           << ',' << (r.is_mems ? "true" : "false") << '\n';
    }
    out << os.str();
}

std::vector<SweepRow> read_sweep_csv(std::istream &is) {
    std::vector<SweepRow> rows;
    for_each_csv_row(is, kSweepHeader, 9, [&](const std::vector<std::string_view> &f) {
        SweepRow r;
        r.family = std::string(f[0]);
        r.p = parse_number(f[1]);
        r.s_l = parse_number(f[2]);
        r.c = parse_number(f[3]);
        r.c_star = parse_number(f[4]);
        r.f = parse_number(f[5]);
        r.b = parse_number(f[6]);
        r.rank = parse_int<int>(f[7]);
        if (f[8] != "true" && f[8] != "false") {
            throw std::runtime_error("is_mems must be true or false");
        }
        r.is_mems = f[8] == "true";
        rows.push_back(std::move(r));
    });
    return rows;
}

void write_ensemble_csv(std::ostream &out, std::span<const StateRecord> records) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << kEnsembleHeader << '\n';
    for (const StateRecord &r : records) {
        os << r.index << ',' << r.rank;
        for (double l : r.lambda.values()) {
            os << ',' << format_number(l);
        }
        os << ',' << format_number(r.s_l) << ',' << format_number(r.c) << ',' << format_number(r.c_star) << ','
           << format_number(r.f) << ',' << format_number(r.b) << ',' << region_token(r.region) << '\n';
    }
    out << os.str();
}

std::string ensemble_csv(std::span<const StateRecord> records) {
    std::ostringstream os;
    write_ensemble_csv(os, records);
    return std::move(os).str();
}

std::vector<StateRecord> read_ensemble_csv(std::istream &is) {
    std::vector<StateRecord> out;
    for_each_csv_row(is, kEnsembleHeader, 12, [&](const std::vector<std::string_view> &f) {
        StateRecord r;
        r.index = parse_int<std::uint64_t>(f[0]);
        r.rank = parse_int<int>(f[1]);
        std::array<double, 4> lambda{};
        for (std::size_t k = 0; k < 4; ++k) {
            lambda[k] = parse_number(f[2 + k]);
        }
        r.lambda = Spectrum::from_values(lambda);
        r.s_l = parse_number(f[6]);
        r.c = parse_number(f[7]);
        r.c_star = parse_number(f[8]);
        r.f = parse_number(f[9]);
        r.b = parse_number(f[10]);
        r.region = parse_region(f[11]);
        out.push_back(r);
    });
    return out;
}

nlohmann::json manifest_to_json(const EnsembleManifest &m) {
    return nlohmann::json{{"seed", m.seed},
                          {"rank", m.rank},
                          {"count", m.count},
                          {"generator_version", m.generator_version},
                          {"created", m.created}};
}

EnsembleManifest manifest_from_json(const nlohmann::json &j) {
    EnsembleManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.rank = j.at("rank").get<int>();
    m.count = j.at("count").get<std::size_t>();
    m.generator_version = j.at("generator_version").get<std::string>();
    m.created = j.at("created").get<std::string>();
    return m;
}

std::filesystem::path manifest_path_for(const std::filesystem::path &csv_path) {
    return std::filesystem::path(csv_path.string() + ".manifest.json");
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

void write_text_file(const std::filesystem::path &path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return std::move(ss).str();
}

} // namespace memslab
