#pragma once

namespace holoconv {

// Command-line front end. Exit codes: 0 clean, 2 violation/witness found,
// 1 usage or input error.
int run_cli(int argc, char** argv);

}  // namespace holoconv
