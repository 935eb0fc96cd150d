#pragma once

namespace hyperreg {

/// Upper bound on worker threads for parallel loops; 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

}  // namespace hyperreg
