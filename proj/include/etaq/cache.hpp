#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "etaq/qseries.hpp"

namespace etaq {

// Coefficient cache: JSON-lines, one header object followed by one record
// per nonzero stored coefficient.  Numeric payloads are exact decimal
// strings, so round-trips are bit-exact.  Zeros on the declared grid are
// implied by omission.
//
//   {"format":"etaq-cache-v1","spec":...,"field_d":...,"start24":...,"step24":...,"trunc24":...}
//   {"k24":0,"a_num":"1","a_den":"1","b_num":"0","b_den":"1","d":null}

inline std::string cache_file_name(const std::string& spec, long field_d, long trunc24) {
    std::string key;
    for (char c : spec) {
        if (c == ' ')
            key += '_';
        else if (c == '^')
            key += 'p';
        else if (c == '-')
            key += 'm';
        else
            key += c;
    }
    return key + ".d" + std::to_string(field_d) + ".t" + std::to_string(trunc24) + ".jsonl";
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& spec,
                                        long field_d, long trunc24) {
    return dir / cache_file_name(spec, field_d, trunc24);
}

// Atomic write: temp file in the target directory, then rename.
inline void write_cache(const std::filesystem::path& path, const std::string& spec,
                        const QExpansion& f) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw EtaqError("CacheIO", "cannot open " + tmp.string() + " for writing");
        nlohmann::json header{{"format", "etaq-cache-v1"}, {"spec", spec},
                              {"field_d", f.field_d()},   {"start24", f.start24()},
                              {"step24", f.step24()},     {"trunc24", f.trunc24()}};
        out << header.dump() << '\n';
        for (std::size_t i = 0; i < f.size(); ++i) {
            const QuadScalar& c = f.coeff(i);
            if (c.is_zero()) continue;
            nlohmann::json rec{{"k24", f.exp24(i)},
                               {"a_num", c.a().get_num().get_str()},
                               {"a_den", c.a().get_den().get_str()},
                               {"b_num", c.b().get_num().get_str()},
                               {"b_den", c.b().get_den().get_str()}};
            if (c.is_rational())
                rec["d"] = nullptr;
            else
                rec["d"] = c.d();
            out << rec.dump() << '\n';
        }
        if (!out) throw EtaqError("CacheIO", "write failure on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

struct CachedSeries {
    std::string spec;
    QExpansion series;
};

inline CachedSeries read_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EtaqError("CacheIO", "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw EtaqError("CacheIO", "empty cache file " + path.string());
    nlohmann::json header = nlohmann::json::parse(line);
    if (header.value("format", "") != "etaq-cache-v1")
        throw EtaqError("CacheIO", "unrecognized cache format in " + path.string());
    QExpansion f(header.at("field_d").get<long>(), header.at("start24").get<long>(),
                 header.at("step24").get<long>(), header.at("trunc24").get<long>());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        Rational a = rat(Integer(rec.at("a_num").get<std::string>()),
                         Integer(rec.at("a_den").get<std::string>()));
        Rational b = rat(Integer(rec.at("b_num").get<std::string>()),
                         Integer(rec.at("b_den").get<std::string>()));
        long d = rec.at("d").is_null() ? 0 : rec.at("d").get<long>();
        f.set_at24(rec.at("k24").get<long>(),
                   b == 0 ? QuadScalar(a) : QuadScalar(a, b, d));
    }
    return {header.at("spec").get<std::string>(), std::move(f)};
}

}  // namespace etaq
