#pragma once

// Subprocess driver for the command-line binary.  FIBRECOUNT_CLI_PATH is
// injected by the build as the absolute path of the installed tool.

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace testutil {

struct CliResult {
    int status = -1;
    std::string out;
};

// Runs the binary with stderr dropped; stdout is the contract surface
// (reports and JSON), stderr carries timing that varies run to run.
inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(FIBRECOUNT_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

inline std::string last_line(const std::string& text) {
    size_t end = text.find_last_not_of('\n');
    if (end == std::string::npos) return "";
    size_t start = text.rfind('\n', end);
    size_t from = start == std::string::npos ? 0 : start + 1;
    return text.substr(from, end - from + 1);
}

} // namespace testutil
