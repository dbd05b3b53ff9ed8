#pragma once

namespace agentseg {

/// Worker threads used by the OpenMP kernels. n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

} // namespace agentseg
