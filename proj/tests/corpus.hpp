#pragma once
// Fixture corpus loading and single-leaf certificate tampering.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "tropmod/certificate.hpp"

namespace corpus {

struct Fixture {
    std::string name;
    tropmod::Request request;
    std::string expected_verdict; // empty for malformed input
    int expected_exit = 0;
};

inline tropmod::Json read_json(const std::filesystem::path& p)
{
    std::ifstream in(p);
    return tropmod::Json::parse(in);
}

/// Every fixture in the directory, sorted by name. Malformed fixtures keep
/// their raw payload; building the request does not validate it.
inline std::vector<Fixture> load(const std::filesystem::path& dir = TROPMOD_FIXTURE_DIR)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Fixture> out;
    for (const auto& f : files) {
        auto j = read_json(f);
        Fixture fx;
        fx.name = f.stem().string();
        fx.request.command = j.at("command").get<std::string>();
        fx.request.payload = j.at("payload");
        fx.expected_exit = j.at("expect").at("exit").get<int>();
        if (j.at("expect").contains("verdict")) fx.expected_verdict = j.at("expect").at("verdict").get<std::string>();
        out.push_back(std::move(fx));
    }
    return out;
}

inline tropmod::Json mutate_leaf(const tropmod::Json& value)
{
    if (value.is_boolean()) return !value.get<bool>();
    if (value.is_number_integer()) return value.get<std::int64_t>() + 1;
    if (value.is_string()) return value.get<std::string>() + "x";
    if (value.is_array()) return tropmod::Json::array({0});
    if (value.is_object()) return tropmod::Json{{"x", 0}};
    return 0;
}

/// Calls visit(copy) once per leaf of j, with that single leaf altered.
/// Empty arrays and objects count as leaves.
inline void for_each_leaf_mutation(const tropmod::Json& j, const std::function<void(const tropmod::Json&)>& visit)
{
    std::function<void(const tropmod::Json::json_pointer&, const tropmod::Json&)> walk =
        [&](const tropmod::Json::json_pointer& at, const tropmod::Json& v) {
            if (v.is_object() && !v.empty()) {
                for (const auto& [k, child] : v.items()) walk(at / k, child);
            } else if (v.is_array() && !v.empty()) {
                for (std::size_t i = 0; i < v.size(); ++i) walk(at / i, v[i]);
            } else {
                auto copy = j;
                copy[at] = mutate_leaf(v);
                visit(copy);
            }
        };
    walk(tropmod::Json::json_pointer(), j);
}

/// Number of certificate mutations that still verify, over the verdict,
/// witness and replay fields.
inline int surviving_mutations(const tropmod::Certificate& cert, const tropmod::Request& req, int* tried = nullptr)
{
    int survived = 0, count = 0;
    tropmod::Json whole{{"verdict", cert.verdict}, {"witness", cert.witness}, {"replay", cert.replay}};
    for_each_leaf_mutation(whole, [&](const tropmod::Json& m) {
        ++count;
        bool ok = false;
        try {
            tropmod::Certificate c = cert;
            c.verdict = m.at("verdict").get<std::string>();
            c.witness = m.at("witness");
            c.replay = m.at("replay");
            ok = tropmod::verify(c, req);
        } catch (...) {
            ok = false;
        }
        if (ok) ++survived;
    });
    if (tried) *tried = count;
    return survived;
}

} // namespace corpus
