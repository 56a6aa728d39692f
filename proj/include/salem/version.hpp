#ifndef SALEM_VERSION_HPP
#define SALEM_VERSION_HPP

#define SALEM_VERSION_STRING "0.1.0"

#endif
