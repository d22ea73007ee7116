#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

// Runs the built CLI binary (path from the MN_CLI environment variable) and
// captures stdout and the exit code.  stderr is folded into the capture so
// error messages can be asserted on as well.
namespace mntest {

struct CliResult {
    int exit_code;
    std::string output;
};

inline std::string cli_path() {
    const char* path = std::getenv("MN_CLI");
    if (!path || !*path) throw std::runtime_error("MN_CLI environment variable not set");
    return path;
}

inline std::string seed_db_path() {
    const char* path = std::getenv("MN_SEED_DB");
    if (!path || !*path) throw std::runtime_error("MN_SEED_DB environment variable not set");
    return path;
}

inline CliResult run_cli(const std::string& args) {
    std::string command = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + command);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

} // namespace mntest
