#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "tropmod/certificate.hpp"

using tropmod::Certificate;
using tropmod::InvalidInput;
using tropmod::Json;
using tropmod::Request;

namespace {

constexpr int kExitMalformed = 2;

Json read_input(const std::string& path)
{
    std::string text;
    if (path.empty() || path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json error_json(const std::string& msg) { return Json{{"error", msg}, {"verdict", "invalid_input"}}; }

// Input is either a bare payload or a full request for the same command.
Request request_for(const std::string& command, const Json& input, const tropmod::RunOptions& opt)
{
    if (input.is_object() && input.contains("command") && input.contains("payload")) {
        Request r = Request::from_json(input);
        if (r.command != command) throw InvalidInput("request is for '" + r.command + "', not '" + command + "'");
        if (!input.contains("options")) r.options = opt;
        return r;
    }
    return Request{command, input, opt};
}

int run_single(const std::string& command, const Json& input, const tropmod::RunOptions& opt)
{
    Certificate cert = tropmod::run(request_for(command, input, opt));
    emit(cert.to_json());
    return cert.exit_code();
}

int run_batch(const Json& input, const tropmod::RunOptions& opt)
{
    const Json& list = input.is_object() && input.contains("requests") ? input["requests"] : input;
    if (!list.is_array()) throw InvalidInput("batch input must be an array of requests");
    std::vector<std::future<std::pair<Json, int>>> jobs;
    for (const auto& item : list) {
        jobs.push_back(std::async(std::launch::async, [item, opt]() -> std::pair<Json, int> {
            try {
                Request r = Request::from_json(item);
                if (!item.contains("options")) r.options = opt;
                Certificate c = tropmod::run(r);
                return {c.to_json(), c.exit_code()};
            } catch (const InvalidInput& e) {
                return {error_json(e.what()), kExitMalformed};
            }
        }));
    }
    Json out = Json::array();
    int code = 0;
    for (auto& j : jobs) {
        auto [json, c] = j.get();
        out.push_back(std::move(json));
        code = std::max(code, c);
    }
    emit(out);
    return code;
}

int run_verify(const Json& input)
{
    Request r = Request::from_json(tropmod::json_field(input, "request"));
    Certificate c = Certificate::from_json(tropmod::json_field(input, "certificate"));
    bool ok = tropmod::verify(c, r);
    emit(Json{{"valid", ok}});
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Projectivity classifier for modules over idempotent semirings"};
    app.require_subcommand(1);
    std::string in_path;
    tropmod::RunOptions opt;
    app.add_option("--in", in_path, "Input JSON file (default: standard input)");
    app.add_option("--seed", opt.seed, "Seed recorded in the certificate");
    app.add_option("--cap-n", opt.cap_n, "Largest accepted vertex count")->check(CLI::Range(0, 64));

    std::string chosen;
    for (const auto& name : tropmod::command_names())
        app.add_subcommand(name, "Run " + name + " on one instance")->fallthrough()->callback([&chosen, name] {
            chosen = name;
        });
    app.add_subcommand("batch", "Run an array of requests")->fallthrough()->callback([&] { chosen = "batch"; });
    app.add_subcommand("verify", "Check {request, certificate}")->fallthrough()->callback([&] { chosen = "verify"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitMalformed;
    }

    try {
        Json input = read_input(in_path);
        if (chosen == "batch") return run_batch(input, opt);
        if (chosen == "verify") return run_verify(input);
        return run_single(chosen, input, opt);
    } catch (const InvalidInput& e) {
        emit(error_json(e.what()));
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const Json::exception& e) {
        emit(error_json(e.what()));
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
}
