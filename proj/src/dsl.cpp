#include "doctrina/doctrine.hpp"
