#pragma once

#include <string>
#include <vector>

#include "tropmod/json_io.hpp"

namespace tropmod {

struct RunOptions {
    std::int64_t seed = 0;
    /// Largest quiver or family vertex count accepted.
    int cap_n = 12;
};

struct Request {
    std::string command;
    Json payload;
    RunOptions options;

    /// {"command": ..., "payload": ..., "options": {"seed": ..., "cap_n": ...}}
    static Request from_json(const Json& j);
    Json to_json() const;
};

struct Certificate {
    std::string command;
    std::string verdict;
    Json witness;
    /// Seed, caps and a digest sealing verdict and witness to the request.
    Json replay;

    int exit_code() const;
    Json to_json() const;
    static Certificate from_json(const Json& j);
};

/// Subcommand names accepted by run, in display order.
const std::vector<std::string>& command_names();

/// 0 for a positive verdict, 1 for a property-failure verdict.
int verdict_exit_code(const std::string& verdict);

/// Throws InvalidInput (or CapExceeded) on a malformed request.
Certificate run(const Request& request);

/// Re-checks the witness against the request using only cheap independent
/// checks. Never throws; any mismatch yields false.
bool verify(const Certificate& certificate, const Request& request);

/// The seal stored in replay; exposed so tests can re-seal edited witnesses.
std::string certificate_seal(const Certificate& certificate, const Request& request);

} // namespace tropmod
