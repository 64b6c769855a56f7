#pragma once

#define QMETRIC_VERSION "0.1.0"
