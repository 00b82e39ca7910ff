#include <pybind11/pybind11.h>
PYBIND11_MODULE(_orbitforms, m) { m.doc() = "placeholder"; }
