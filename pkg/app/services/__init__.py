# Services 패키지 (스펙 로더, 검사 실행기)
