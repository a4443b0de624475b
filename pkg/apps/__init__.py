# Точки входа: командная строка
