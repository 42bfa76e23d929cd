"""Kernel selection: compiled extension if built, pure python otherwise.

Set ``SKEINLAT_PURE=1`` in the environment to force the pure fallback (used
by the benchmark and by CI to exercise both paths).
"""

import os

if os.environ.get("SKEINLAT_PURE"):
    from . import _kernel_pure as _impl

    KERNEL_KIND = "pure (forced)"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]

        KERNEL_KIND = "compiled"
    except ImportError:
        from . import _kernel_pure as _impl

        KERNEL_KIND = "pure"

vec_add = _impl.vec_add
vec_sub = _impl.vec_sub
vec_scale = _impl.vec_scale
vec_mul = _impl.vec_mul
vec_content = _impl.vec_content
