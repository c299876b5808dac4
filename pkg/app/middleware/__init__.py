# Middleware package (검사 시간 측정)
