#pragma once

#define SRLAB_VERSION "1.0.0"
