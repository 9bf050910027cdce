#ifndef RWMARK_THREADING_HPP
#define RWMARK_THREADING_HPP

namespace rwmark {

// Thread count used by the parallel kernels. All kernels produce output
// that is bit-identical for any count; this only affects speed.
int max_threads();
void set_threads(int n); // n < 1 is ignored

} // namespace rwmark

#endif
