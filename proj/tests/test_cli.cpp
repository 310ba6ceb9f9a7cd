// End-to-end contract checks for the CLI binary (path in argv[1]):
// exit codes, batch files, error reporting and the worker env var.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void check(bool cond, const std::string& what) {
    if (!cond) {
        ++failures;
        std::printf("FAIL: %s\n", what.c_str());
    }
}

std::string capture(const std::string& command, int& exit_code) {
    std::string out;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: test_cli <path-to-cli>\n");
        return 1;
    }
    std::string cli = argv[1];
    int code = 0;

    // exit 0: passing check with a JSON report on stdout
    std::string out = capture(cli + " verify --builtin osp12 --op Omega --mode central", code);
    check(code == 0, "central casimir should exit 0, got " + std::to_string(code));
    check(out.find("\"status\": \"pass\"") != std::string::npos, "pass status missing from report");
    check(out.find("\"fingerprint\"") != std::string::npos, "fingerprint missing from report");

    // exit 1: nonzero residual, report still emitted
    out = capture(cli + " verify --builtin sl2 --op h --mode central", code);
    check(code == 1, "non-central element should exit 1, got " + std::to_string(code));
    check(out.find("\"status\": \"fail\"") != std::string::npos, "fail status missing from report");
    check(out.find("2*e") != std::string::npos, "expected the residual 2*e in the report");

    // exit 2: input errors of several kinds
    capture(cli + " verify --builtin nosuch --op Omega", code);
    check(code == 2, "unknown builtin should exit 2, got " + std::to_string(code));
    capture(cli + " verify --builtin sl2 --op \"q\"", code);
    check(code == 2, "unknown generator should exit 2, got " + std::to_string(code));
    capture(cli + " verify --builtin sl2 --op \"Omega(\"", code);
    check(code == 2, "syntax error should exit 2, got " + std::to_string(code));
    capture(cli + " module hwv --builtin gl:2,1 --factors natural --points 0", code);
    check(code == 2, "zero evaluation point should exit 2, got " + std::to_string(code));
    capture(cli + " module hwv --builtin gl:2,1 --factors natural,natural --points 2,2", code);
    check(code == 2, "repeated points should exit 2, got " + std::to_string(code));
    // mixed-parity operand for the twisted action
    capture(cli + " verify --builtin gl11 --op \"e + h1\" --mode anti", code);
    check(code == 2, "mixed parity anti check should exit 2, got " + std::to_string(code));

    // batch file: all expressions verified, worst result wins
    {
        std::ofstream f("/tmp/loopcas_batch.txt");
        f << "# central operators of sl2\n";
        f << "Omega\n";
        f << "OmegaC\n";
        f << "Omega(t; t^-1)   # loop deformation\n";
    }
    out = capture(cli + " verify --builtin sl2 --batch /tmp/loopcas_batch.txt --mode central", code);
    check(code == 0, "batch of central operators should exit 0, got " + std::to_string(code));
    check(out.find("OmegaC") != std::string::npos, "batch report should echo each expression");
    {
        std::ofstream f("/tmp/loopcas_batch.txt");
        f << "Omega\nh\n";
    }
    capture(cli + " verify --builtin sl2 --batch /tmp/loopcas_batch.txt --mode central", code);
    check(code == 1, "batch with a failing line should exit 1, got " + std::to_string(code));
    std::remove("/tmp/loopcas_batch.txt");

    // algebra round trip through a file
    out = capture(cli + " algebra info --builtin gl:2,1 --json /tmp/loopcas_alg.json", code);
    check(code == 0, "algebra info should exit 0");
    std::remove("/tmp/loopcas_alg.json");

    // worker fan-out must not change a single byte
    int c1 = 0, c2 = 0;
    std::string seq = capture("LOOPCAS_WORKERS=1 " + cli + " verify --builtin gl:2,1 --op \"S[2]\" --mode even-central",
                              c1);
    std::string par = capture("LOOPCAS_WORKERS=8 " + cli + " verify --builtin gl:2,1 --op \"S[2]\" --mode even-central",
                              c2);
    check(c1 == c2, "worker counts changed the exit code");
    check(seq == par, "worker counts changed the report bytes");
    check(!seq.empty() && c1 == 0, "even-central S[2] should pass");

    // module spec as a JSON document
    {
        std::ofstream f("/tmp/loopcas_mod.json");
        f << "{\"factors\": [\"natural\", \"natural\"], \"points\": [\"1\", \"2\"]}\n";
    }
    out = capture(cli + " module gelfand-sum --builtin gl:2,1 --module /tmp/loopcas_mod.json --k 2", code);
    check(code == 0, "module spec file should work, got exit " + std::to_string(code));
    int flag_code = 0;
    std::string via_flags =
        capture(cli + " module gelfand-sum --builtin gl:2,1 --factors natural,natural --points 1,2 --k 2", flag_code);
    // identical computation modulo the echoed arguments
    check(out.find("\"tuple_sum\"") != std::string::npos && via_flags.find("\"tuple_sum\"") != std::string::npos,
          "gelfand-sum reports should carry matrices");
    capture(cli + " module gelfand-sum --builtin gl:2,1 --module /tmp/loopcas_mod.json --points 1,2 --k 2", code);
    check(code == 2, "--module together with --points should exit 2");
    std::remove("/tmp/loopcas_mod.json");

    // module commands over an algebra loaded from a file
    {
        int dump_code = 0;
        std::string info = capture(cli + " algebra validate --builtin osp12", dump_code);
        check(dump_code == 0, "osp12 validates");
    }

    if (failures == 0) std::printf("test_cli: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
