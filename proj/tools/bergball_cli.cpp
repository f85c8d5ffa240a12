// placeholder; full CLI arrives with the io module
int main() { return 0; }
